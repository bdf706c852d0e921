#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "decaylab/models/model.hpp"

namespace decaylab::stepper {

using models::ModelSpec;
using spectral::SpectralField;

struct RunState {
  std::shared_ptr<const ModelSpec> spec;
  SpectralField field;
  double t = 0.0;
  double dt = 0.0;
  long step_count = 0;
};

// phi_1..phi_3 at z <= 0, Taylor series for |z| < 1e-2.
struct Phi {
  double p1, p2, p3;
};
Phi phi_functions(double z);

// Norms above this, or non-finite ones, count as blow-up.
inline constexpr double kBlowUpNorm = 1e12;

// Cox-Matthews exponential Runge-Kutta scheme for u_t = -|k|^{2 theta} u + N(u)
// with N(u) = B(u, u).
class Etdrk4 {
 public:
  Etdrk4(const ModelSpec& spec, const spectral::Grid& grid);

  const models::BilinearOperator& op() const { return op_; }
  const ModelSpec& spec() const { return op_.spec(); }

  SpectralField nonlinear(const SpectralField& u) const { return op_.apply(u, u); }
  // Projected, dealiased copy of u, the form every step returns.
  SpectralField admissible(const SpectralField& u) const;

  // One step of size dt > 0; BlowUp when the result has a runaway norm.
  // nonlinear_at_start, when given, receives N(u) at the old state.
  RunState step(const RunState& s, double dt, SpectralField* nonlinear_at_start = nullptr) const;

  // 0.5 * min_i(L_i/N_i) / max|Tu|; +infinity for Tu = 0.
  double cfl_suggest(const SpectralField& u) const;

 private:
  struct Coefficients {
    double dt;
    std::vector<double> e, e2, q, f1, f2, f3;
  };
  std::shared_ptr<const Coefficients> coefficients(double dt) const;

  models::BilinearOperator op_;
  std::vector<double> symbol_;  // |k|^{2 theta}
  mutable std::mutex cache_mutex_;
  mutable std::vector<std::shared_ptr<const Coefficients>> cache_;
};

RunState step_etdrk4(const RunState& s, double dt);
double cfl_suggest(const ModelSpec& spec, const SpectralField& u);

}  // namespace decaylab::stepper
