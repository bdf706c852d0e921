#pragma once

#include "decaylab/energy/functional.hpp"

namespace decaylab::energy {

struct CalibrationOptions {
  // Doublings or halvings allowed per order while bracketing.
  int search_budget = 60;
  int bisection_steps = 30;
  double tol = 1e-10;
  double floor = 1e-300;
  double t0 = 0.0;
};

// Greedy per-order search on the ladder norms stored in `trajectory`: with
// alpha_0..alpha_{n-1} fixed, alpha_n is the largest value found keeping the
// partial functional non-increasing within tol. An order whose bracket never
// closes is capped (budget_capped); an order for which no tried value is
// feasible keeps the smallest one and is listed in violated_orders.
WeightSequence calibrate_weights(const EnergyTrace& trajectory, int N, const CalibrationOptions& opt = {});

}  // namespace decaylab::energy
