#include "decaylab/mild/picard.hpp"

#include <algorithm>
#include <cmath>

#include "decaylab/errors.hpp"
#include "decaylab/simd/kernels.hpp"
#include "decaylab/spectral/ops.hpp"
#include "decaylab/stepper/etdrk4.hpp"

namespace decaylab::mild {
namespace {

struct GaussRule {
  std::vector<double> x, w;  // on [0, 1]
};

GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    r.x[i] = 0.5 * (1.0 - z);
    r.w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

std::vector<double> dissipation_symbol(const spectral::Grid& g, double theta) {
  std::vector<double> lam(g.size());
  const auto k2 = g.k_squared();
  for (std::size_t f = 0; f < lam.size(); ++f) lam[f] = std::pow(k2[f], theta);
  return lam;
}

// e^{-tau A} f; weights recomputed per call.
SpectralField semigroup(const SpectralField& f, const std::vector<double>& lam, double tau) {
  std::vector<double> w(lam.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-tau * lam[i]);
  SpectralField out(f.grid(), f.components());
  const auto& kt = simd::active();
  for (int c = 0; c < f.components(); ++c)
    kt.scale_into(f.component(c).data(), w.data(), out.component(c).data(), w.size());
  return out;
}

double norm_without_mean(const SpectralField& f, double s) {
  return spectral::sobolev_norm(spectral::remove_mean(f), s);
}

void check_mesh(const Trajectory& a, const Trajectory& b) {
  if (a.times != b.times) throw DimensionError("trajectories use different meshes");
  if (a.fields.size() != a.times.size() || b.fields.size() != b.times.size())
    throw DimensionError("trajectory has a field count different from its mesh");
  if (!a.fields.empty()) spectral::require_same_grid(a.fields.front(), b.fields.front());
}

// Interpolant of a trajectory inside [t_j, t_{j+1}].
struct Interpolant {
  const Trajectory& traj;
  const std::vector<double>& lam;
  std::vector<SpectralField> correction;  // u_{j+1} - e^{-hA} u_j

  Interpolant(const Trajectory& t, const std::vector<double>& l) : traj(t), lam(l) {
    for (std::size_t j = 0; j + 1 < t.times.size(); ++j) {
      SpectralField c = t.fields[j + 1];
      c -= semigroup(t.fields[j], lam, t.times[j + 1] - t.times[j]);
      correction.push_back(std::move(c));
    }
  }
  SpectralField at(std::size_t j, double s) const {
    const double h = traj.times[j + 1] - traj.times[j];
    SpectralField out = semigroup(traj.fields[j], lam, s - traj.times[j]);
    SpectralField c = correction[j];
    c *= (s - traj.times[j]) / h;
    out += c;
    return out;
  }
};

}  // namespace

Trajectory Trajectory::operator-(const Trajectory& o) const {
  check_mesh(*this, o);
  Trajectory out = *this;
  for (std::size_t i = 0; i < fields.size(); ++i) out.fields[i] -= o.fields[i];
  return out;
}

std::vector<double> make_mesh(double T, int M, int geometric) {
  if (!(T > 0.0)) throw DomainError("mesh horizon must be positive");
  if (M < 2 || geometric < 0 || geometric >= M) throw DomainError("bad mesh point counts");
  const int uniform = M - geometric;
  const double h = T / uniform;
  std::vector<double> t{0.0};
  for (int j = geometric; j >= 1; --j) t.push_back(h * std::ldexp(1.0, -j));
  for (int j = 1; j <= uniform; ++j) t.push_back(j == uniform ? T : h * j);
  return t;
}

double v_norm(const Trajectory& traj) {
  double best = 0.0;
  const double p = (traj.gamma - traj.beta_c) / (2.0 * traj.theta);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    best = std::max(best, norm_without_mean(traj.fields[i], traj.beta_c));
    if (traj.times[i] > 0.0)
      best = std::max(best, std::pow(traj.times[i], p) * norm_without_mean(traj.fields[i], traj.gamma));
  }
  return best;
}

double v_norm_gamma_part(const Trajectory& traj) {
  double best = 0.0;
  const double p = (traj.gamma - traj.beta_c) / (2.0 * traj.theta);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    if (traj.times[i] > 0.0)
      best = std::max(best, std::pow(traj.times[i], p) * norm_without_mean(traj.fields[i], traj.gamma));
  return best;
}

Trajectory semigroup_trajectory(const SpectralField& u0, const std::vector<double>& times, double theta,
                                double gamma, double beta_c) {
  Trajectory tr;
  tr.times = times;
  tr.gamma = gamma;
  tr.beta_c = beta_c;
  tr.theta = theta;
  const auto lam = dissipation_symbol(u0.grid(), theta);
  for (double t : times) tr.fields.push_back(semigroup(u0, lam, t));
  return tr;
}

Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const Forcing& forcing,
                         const QuadratureOptions& q) {
  check_mesh(u, v);
  Trajectory out = u;
  if (u.times.empty()) return out;
  for (std::size_t i = 1; i < u.times.size(); ++i)
    if (!(u.times[i] > u.times[i - 1])) throw DimensionError("trajectory mesh must be strictly increasing");
  const spectral::Grid& g = u.fields.front().grid();
  const auto lam = dissipation_symbol(g, u.theta);
  double lam_max = 0.0;
  const auto mask = g.dealias_mask();
  for (std::size_t f = 0; f < lam.size(); ++f)
    if (mask[f] != 0.0) lam_max = std::max(lam_max, lam[f]);

  const Interpolant iu(u, lam), iv(v, lam);
  const GaussRule gr = gauss_legendre(q.gauss_points);
  const double a = (u.beta_c + 2.0 * u.theta - u.gamma) / (2.0 * u.theta);
  const double grading = std::clamp(a < 1.0 ? 1.0 / (1.0 - a) : q.max_grading, 1.0, q.max_grading);

  const int comps = u.fields.front().components();
  SpectralField acc(g, comps);
  out.fields[0] = acc;
  for (std::size_t i = 1; i < u.times.size(); ++i) {
    const double t0 = u.times[i - 1], t1 = u.times[i], h = t1 - t0;
    SpectralField panel(g, comps);
    const int m = std::clamp(static_cast<int>(std::ceil(lam_max * h / 2.0)), q.min_subpanels, 256);
    for (int j = 0; j < m; ++j) {
      // Subpanel endpoints cluster toward s = t1.
      const double x0 = 1.0 - std::pow(1.0 - static_cast<double>(j) / m, grading);
      const double x1 = 1.0 - std::pow(1.0 - static_cast<double>(j + 1) / m, grading);
      for (std::size_t k = 0; k < gr.x.size(); ++k) {
        const double s = t0 + h * (x0 + (x1 - x0) * gr.x[k]);
        const double wq = h * (x1 - x0) * gr.w[k];
        SpectralField f = forcing(iu.at(i - 1, s), iv.at(i - 1, s));
        SpectralField contrib = semigroup(f, lam, t1 - s);
        contrib *= wq;
        panel += contrib;
      }
    }
    acc = semigroup(acc, lam, h);
    acc += panel;
    out.fields[i] = acc;
  }
  return out;
}

Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const models::BilinearOperator& op,
                         const QuadratureOptions& q) {
  if (op.spec().linear) {
    check_mesh(u, v);
    Trajectory out = u;
    for (auto& f : out.fields) f = SpectralField(f.grid(), f.components());
    return out;
  }
  return duhamel_apply(
      u, v, [&op](const SpectralField& a, const SpectralField& b) { return op.apply(a, b); }, q);
}

Trajectory duhamel_apply(const Trajectory& u, const Trajectory& v, const ModelSpec& spec,
                         const QuadratureOptions& q) {
  if (u.fields.empty()) return u;
  return duhamel_apply(u, v, models::BilinearOperator(spec, u.fields.front().grid()), q);
}

nlohmann::json PicardReport::to_json() const {
  return {{"converged", converged},
          {"diverged", diverged},
          {"iterations", iterations},
          {"deltas", deltas},
          {"ratios", ratios},
          {"bilinear_constant", bilinear_constant},
          {"M", M},
          {"M_gamma", M_gamma},
          {"u0_norm", u0_norm},
          {"final_v_norm", final_v_norm},
          {"bound_ok", bound_ok},
          {"gamma", gamma}};
}

PicardResult picard_solve(const SpectralField& u0_in, const ModelSpec& spec, double T, double gamma,
                          const PicardOptions& opt) {
  const double bc = spec.beta_c().to_double();
  const double th = spec.theta_d();
  if (!(T > 0.0)) throw DomainError("mild horizon must be positive");
  if (!(gamma > bc && gamma < bc + 2.0 * th)) throw DomainError("need beta_c < gamma < beta_c + 2 theta");
  const stepper::Etdrk4 scheme(spec, u0_in.grid());
  const models::BilinearOperator& op = scheme.op();
  const SpectralField u0 = scheme.admissible(u0_in);

  const auto mesh = make_mesh(T, opt.mesh_points, std::min(16, opt.mesh_points / 4));
  const Trajectory s0 = semigroup_trajectory(u0, mesh, th, gamma, bc);

  PicardResult res;
  PicardReport& rep = res.report;
  rep.gamma = gamma;
  rep.M = v_norm(s0);
  rep.M_gamma = v_norm_gamma_part(s0);
  rep.u0_norm = norm_without_mean(u0, bc);

  Trajectory u = s0;
  double v1 = 0.0;
  int non_contracting = 0;
  for (int k = 0; k < opt.max_iters; ++k) {
    Trajectory d = duhamel_apply(u, u, op, opt.quadrature);
    const double vu = v_norm(u);
    if (vu > 0.0) rep.bilinear_constant = std::max(rep.bilinear_constant, v_norm(d) / (vu * vu));
    Trajectory next = s0;
    for (std::size_t i = 0; i < next.fields.size(); ++i) next.fields[i] += d.fields[i];
    const double delta = v_norm(next - u);
    if (k == 0) v1 = v_norm(next);
    rep.deltas.push_back(delta);
    if (k > 0) {
      const double prev = rep.deltas[k - 1];
      const double r = prev > 0.0 ? delta / prev : (delta > 0.0 ? INFINITY : 0.0);
      rep.ratios.push_back(r);
      non_contracting = r >= 1.0 ? non_contracting + 1 : 0;
    }
    u = std::move(next);
    rep.iterations = k + 1;
    if (!std::isfinite(delta) || delta > stepper::kBlowUpNorm) {
      rep.diverged = true;
      break;
    }
    if (delta <= opt.tol * v1) {
      rep.converged = true;
      break;
    }
    if (non_contracting >= 3) {
      rep.diverged = true;
      break;
    }
  }
  rep.final_v_norm = v_norm(u);
  rep.bound_ok = rep.converged && rep.final_v_norm <= 2.0 * rep.M + opt.tol;
  res.trajectory = std::move(u);
  return res;
}

double contraction_threshold(const SpectralField& shape, const ModelSpec& spec, double T, double gamma,
                             double lo, double hi, int steps, const PicardOptions& opt) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("threshold search needs 0 < lo < hi");
  auto converges = [&](double a) {
    SpectralField u0 = shape;
    u0 *= a;
    return picard_solve(u0, spec, T, gamma, opt).report.converged;
  };
  if (!converges(lo)) return 0.0;
  if (converges(hi)) return hi;
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(lo * hi);
    (converges(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace decaylab::mild
