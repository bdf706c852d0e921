#include "decaylab/energy/calibrate.hpp"

#include <algorithm>
#include <cmath>

namespace decaylab::energy {

WeightSequence calibrate_weights(const EnergyTrace& trajectory, int N, const CalibrationOptions& opt) {
  if (trajectory.size() == 0) throw DomainError("calibration needs a trajectory");
  const std::size_t nt = trajectory.size();
  for (const auto& v : trajectory.values)
    if (static_cast<int>(v.ladder.size()) < N + 1) throw DomainError("trajectory ladder shorter than N");

  WeightSequence w;
  w.rule = WeightRule::empirical;
  w.n_max = N;
  w.values.assign(N + 1, 0.0);
  w.values[0] = 1.0;

  // partial[i] = sum_{m < n} alpha_m s_i^m |u(t_i)|^2_m, g[i] = s_i^n |u(t_i)|^2_n.
  std::vector<double> partial(nt), g(nt), s(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    s[i] = std::max(trajectory.times[i] - opt.t0, 0.0);
    const double l = trajectory.values[i].ladder[0];
    partial[i] = l * l;
  }
  auto feasible = [&](double a) {
    for (std::size_t i = 0; i + 1 < nt; ++i) {
      const double e0 = partial[i] + a * g[i];
      const double e1 = partial[i + 1] + a * g[i + 1];
      if ((e1 - e0) / std::max(e0, opt.floor) > opt.tol) return false;
    }
    return true;
  };

  for (int n = 1; n <= N; ++n) {
    for (std::size_t i = 0; i < nt; ++i) {
      const double l = trajectory.values[i].ladder[n];
      g[i] = std::pow(s[i], n) * l * l;
    }
    double lo = 0.0, hi = 0.0;
    double a = 2.0 * w.values[n - 1] / n;
    if (!(a > 0.0) || !std::isfinite(a)) a = 1.0;
    bool bracketed = false;
    if (feasible(a)) {
      lo = a;
      for (int k = 0; k < opt.search_budget; ++k) {
        const double up = lo * 2.0;
        if (!std::isfinite(up)) break;
        if (!feasible(up)) {
          hi = up;
          bracketed = true;
          break;
        }
        lo = up;
      }
      if (!bracketed) w.budget_capped = true;
    } else {
      hi = a;
      for (int k = 0; k < opt.search_budget; ++k) {
        const double down = hi * 0.5;
        if (feasible(down)) {
          lo = down;
          bracketed = true;
          break;
        }
        hi = down;
      }
      if (!bracketed) {
        lo = hi;
        w.violated_orders.push_back(n);
      }
    }
    if (bracketed)
      for (int k = 0; k < opt.bisection_steps; ++k) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
      }
    w.values[n] = lo;
    for (std::size_t i = 0; i < nt; ++i) partial[i] += lo * g[i];
  }
  return w;
}

}  // namespace decaylab::energy
