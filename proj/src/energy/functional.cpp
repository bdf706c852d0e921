#include "decaylab/energy/functional.hpp"

#include <algorithm>
#include <cmath>

#include "decaylab/errors.hpp"

namespace decaylab::energy {

EnergyValue energy_eval(const spectral::SpectralField& f, double t, double theta, double beta,
                        const WeightSequence& w, double t0) {
  if (!(t >= 0.0)) throw DomainError("energy time must be nonnegative");
  if (beta <= 0.0 && !f.mean_zero()) throw DomainError("functional level <= 0 needs a mean-zero field");
  const spectral::Grid& g = f.grid();
  const int N = w.n_max;
  const auto k2 = g.k_squared();
  const std::size_t m = g.size();

  // Per-mode |u(k)|^2 |k|^{2 beta} volume, then repeated multiplication by
  // |k|^{2 theta} walks up the ladder.
  std::vector<double> e(m, 0.0), step(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (k2[i] == 0.0) continue;
    double a = 0.0;
    for (int c = 0; c < f.components(); ++c) a += std::norm(f.at(c, i));
    e[i] = a * std::pow(k2[i], beta) * g.volume();
    step[i] = std::pow(k2[i], theta);
  }
  EnergyValue v;
  v.terms.assign(N + 1, 0.0);
  v.ladder.assign(N + 1, 0.0);
  const double s = std::max(t - t0, 0.0);
  double spow = 1.0;
  for (int n = 0; n <= N; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += e[i];
    v.ladder[n] = std::sqrt(acc);
    v.terms[n] = w.values[n] * spow * acc;
    v.total += v.terms[n];
    spow *= s;
    if (n < N)
      for (std::size_t i = 0; i < m; ++i) e[i] *= step[i];
  }
  v.tail = v.total > 0.0 ? v.terms[N] / v.total : 0.0;
  return v;
}

std::vector<double> EnergyTrace::totals() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.total);
  return out;
}

EnergyTrace reweight(const EnergyTrace& trace, const WeightSequence& w, double t0) {
  EnergyTrace out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const EnergyValue& src = trace.values[i];
    const int N = std::min<int>(w.n_max, static_cast<int>(src.ladder.size()) - 1);
    EnergyValue v;
    v.ladder.assign(src.ladder.begin(), src.ladder.begin() + N + 1);
    v.terms.assign(N + 1, 0.0);
    const double s = std::max(trace.times[i] - t0, 0.0);
    double spow = 1.0;
    for (int n = 0; n <= N; ++n) {
      v.terms[n] = w.values[n] * spow * v.ladder[n] * v.ladder[n];
      v.total += v.terms[n];
      spow *= s;
    }
    v.tail = v.total > 0.0 ? v.terms[N] / v.total : 0.0;
    out.push(trace.times[i], std::move(v));
  }
  return out;
}

MonotonicityReport monotonicity_report(const std::vector<double>& times, const std::vector<double>& totals,
                                       double tol, double floor) {
  if (totals.empty() || times.size() != totals.size()) throw DomainError("monotonicity needs a nonempty trace");
  MonotonicityReport r;
  for (std::size_t i = 0; i + 1 < totals.size(); ++i) {
    const double inc = (totals[i + 1] - totals[i]) / std::max(totals[i], floor);
    r.max_relative_increase = std::max(r.max_relative_increase, inc);
    if (inc > tol && !r.first_violation_time) r.first_violation_time = times[i + 1];
  }
  return r;
}

MonotonicityReport monotonicity_report(const EnergyTrace& trace, double tol, double floor) {
  return monotonicity_report(trace.times, trace.totals(), tol, floor);
}

DecayFit decay_fit(const EnergyTrace& trace, const WeightSequence& w, int n, double e0) {
  if (trace.size() == 0) throw DomainError("decay fit needs a nonempty trace");
  if (n < 0 || n > w.n_max || n >= static_cast<int>(trace.values.front().ladder.size()))
    throw DomainError("decay order beyond the truncation order");
  if (e0 < 0.0) e0 = trace.values.front().ladder[0] * trace.values.front().ladder[0];
  const double t_last = trace.times.back();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    const double l = trace.values[i].ladder[n];
    if (t > 0.0 && t >= 0.1 * t_last && l > 0.0) {
      xs.push_back(std::log(t));
      ys.push_back(std::log(l * l));
    }
  }
  double t_min = t_last;
  for (double t : trace.times)
    if (t > 0.0) t_min = std::min(t_min, t);
  if (xs.size() < 5 || !(t_last >= 10.0 * t_min * (1.0 - 1e-9)))
    throw DomainError("decay fit needs at least 5 positive times spanning the trailing decade");
  DecayFit fit;
  fit.points = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.fitted_exponent = sxx > 0.0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double l = trace.values[i].ladder[n];
    const double term = w.values[n] * std::pow(trace.times[i], n) * l * l;
    if (e0 > 0.0) fit.bound_margin = std::max(fit.bound_margin, term / e0);
  }
  return fit;
}

}  // namespace decaylab::energy
