#include "decaylab/stepper/etdrk4.hpp"

#include <cmath>
#include <limits>

#include "decaylab/errors.hpp"
#include "decaylab/simd/kernels.hpp"
#include "decaylab/spectral/ops.hpp"

namespace decaylab::stepper {

Phi phi_functions(double z) {
  if (std::fabs(z) < 1e-2) {
    // phi_j(z) = sum_m z^m / (m + j)!
    Phi p{0.0, 0.0, 0.0};
    double zm = 1.0;
    double f1 = 1.0, f2 = 2.0, f3 = 6.0;  // (m+1)!, (m+2)!, (m+3)!
    for (int m = 0; m < 6; ++m) {
      p.p1 += zm / f1;
      p.p2 += zm / f2;
      p.p3 += zm / f3;
      zm *= z;
      f1 *= m + 2;
      f2 *= m + 3;
      f3 *= m + 4;
    }
    return p;
  }
  const double em1 = std::expm1(z);
  return {em1 / z, (em1 - z) / (z * z), (em1 - z - 0.5 * z * z) / (z * z * z)};
}

Etdrk4::Etdrk4(const ModelSpec& spec, const spectral::Grid& grid) : op_(spec, grid) {
  const auto k2 = grid.k_squared();
  symbol_.resize(grid.size());
  const double th = spec.theta_d();
  for (std::size_t f = 0; f < symbol_.size(); ++f) symbol_[f] = std::pow(k2[f], th);
}

std::shared_ptr<const Etdrk4::Coefficients> Etdrk4::coefficients(double dt) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  for (const auto& c : cache_)
    if (c->dt == dt) return c;
  auto c = std::make_shared<Coefficients>();
  c->dt = dt;
  const std::size_t n = symbol_.size();
  for (auto* v : {&c->e, &c->e2, &c->q, &c->f1, &c->f2, &c->f3}) v->resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    const double z = -dt * symbol_[f];
    const Phi full = phi_functions(z);
    const Phi half = phi_functions(0.5 * z);
    c->e[f] = std::exp(z);
    c->e2[f] = std::exp(0.5 * z);
    c->q[f] = 0.5 * dt * half.p1;
    c->f1[f] = dt * (full.p1 - 3.0 * full.p2 + 4.0 * full.p3);
    c->f2[f] = dt * (full.p2 - 2.0 * full.p3);
    c->f3[f] = dt * (4.0 * full.p3 - full.p2);
  }
  if (cache_.size() >= 6) cache_.erase(cache_.begin());
  cache_.push_back(c);
  return c;
}

SpectralField Etdrk4::admissible(const SpectralField& u) const { return op_.project(spectral::dealias(u)); }

namespace {

// out = a*x + b*y per mode and component.
void combine(const std::vector<double>& a, const SpectralField& x, const std::vector<double>& b,
             const SpectralField& y, SpectralField& out) {
  const auto& kt = simd::active();
  const std::size_t n = a.size();
  for (int c = 0; c < x.components(); ++c) {
    kt.scale_into(x.component(c).data(), a.data(), out.component(c).data(), n);
    kt.axpy(y.component(c).data(), b.data(), out.component(c).data(), n);
  }
}

void add_scaled(const std::vector<double>& w, const SpectralField& x, SpectralField& out) {
  const auto& kt = simd::active();
  for (int c = 0; c < x.components(); ++c)
    kt.axpy(x.component(c).data(), w.data(), out.component(c).data(), w.size());
}

}  // namespace

RunState Etdrk4::step(const RunState& s, double dt, SpectralField* nonlinear_at_start) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive and finite");
  const auto co = coefficients(dt);
  const SpectralField& u = s.field;

  const SpectralField nu = nonlinear(u);
  SpectralField a(u.grid(), u.components());
  combine(co->e2, u, co->q, nu, a);
  const SpectralField na = nonlinear(a);
  SpectralField b(u.grid(), u.components());
  combine(co->e2, u, co->q, na, b);
  const SpectralField nb = nonlinear(b);
  SpectralField two_nb_minus_nu = 2.0 * nb;
  two_nb_minus_nu -= nu;
  SpectralField c(u.grid(), u.components());
  combine(co->e2, a, co->q, two_nb_minus_nu, c);
  const SpectralField nc = nonlinear(c);

  SpectralField next(u.grid(), u.components());
  combine(co->e, u, co->f1, nu, next);
  SpectralField nab = na;
  nab += nb;
  nab *= 2.0;
  add_scaled(co->f2, nab, next);
  add_scaled(co->f3, nc, next);

  RunState out{s.spec, admissible(next), s.t + dt, dt, s.step_count + 1};
  const double norm = spectral::l2_norm(out.field);
  if (!std::isfinite(norm) || norm > kBlowUpNorm)
    throw BlowUp("state norm ran away during a step", out.t, norm);
  if (nonlinear_at_start) *nonlinear_at_start = nu;
  return out;
}

double Etdrk4::cfl_suggest(const SpectralField& u) const {
  const spectral::Grid& g = u.grid();
  double h = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.dim(); ++a) h = std::min(h, g.spacing(a));
  const auto vel = spectral::to_physical(op_.transport(u));
  double vmax = 0.0;
  for (double v : vel.values) vmax = std::max(vmax, std::fabs(v));
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * h / vmax;
}

RunState step_etdrk4(const RunState& s, double dt) {
  if (!s.spec) throw DomainError("run state carries no model");
  return Etdrk4(*s.spec, s.field.grid()).step(s, dt);
}

double cfl_suggest(const ModelSpec& spec, const SpectralField& u) {
  return Etdrk4(spec, u.grid()).cfl_suggest(u);
}

}  // namespace decaylab::stepper
