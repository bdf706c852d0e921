#pragma once

#include <optional>
#include <vector>

#include "decaylab/energy/weights.hpp"
#include "decaylab/spectral/field.hpp"

namespace decaylab::energy {

struct EnergyValue {
  std::vector<double> terms;   // alpha_n (t - t0)^n |u|^2_{n theta + beta}
  double total = 0.0;
  double tail = 0.0;           // terms[N]/total, 0 for a zero total
  std::vector<double> ladder;  // |u|_{n theta + beta}, n = 0..N
};

// Truncated functional at level beta (beta_c for the model). The weights'
// t-power uses max(t - t0, 0). Throws DomainError when beta <= 0 and the field
// has a mean, or t < 0.
EnergyValue energy_eval(const spectral::SpectralField& f, double t, double theta, double beta,
                        const WeightSequence& w, double t0 = 0.0);

// Time series of energy values.
struct EnergyTrace {
  std::vector<double> times;
  std::vector<EnergyValue> values;

  void push(double t, EnergyValue v) {
    times.push_back(t);
    values.push_back(std::move(v));
  }
  std::size_t size() const { return times.size(); }
  std::vector<double> totals() const;
};

// Re-evaluates the functional of a trace under other weights, from its
// ladder norms.
EnergyTrace reweight(const EnergyTrace& trace, const WeightSequence& w, double t0 = 0.0);

struct MonotonicityReport {
  double max_relative_increase = 0.0;
  std::optional<double> first_violation_time;
  bool monotone() const { return !first_violation_time.has_value(); }
};

// Relative increments (E_{i+1} - E_i)/max(E_i, floor); a violation is an
// increment above tol, reported at time t_{i+1}.
MonotonicityReport monotonicity_report(const std::vector<double>& times, const std::vector<double>& totals,
                                       double tol = 1e-10, double floor = 1e-300);
MonotonicityReport monotonicity_report(const EnergyTrace& trace, double tol = 1e-10, double floor = 1e-300);

struct DecayFit {
  double fitted_exponent = 0.0;
  double bound_margin = 0.0;
  std::size_t points = 0;
};

// Least-squares slope of log |u|^2_{n theta + beta} against log t over the
// trailing decade of positive times (at least 5 points), and
// bound_margin = max_t alpha_n t^n |u|^2_{n theta + beta} / |u(0)|^2_beta.
// e0 is |u(0)|^2_beta; when negative it is read from the first trace entry.
DecayFit decay_fit(const EnergyTrace& trace, const WeightSequence& w, int n, double e0 = -1.0);

}  // namespace decaylab::energy
