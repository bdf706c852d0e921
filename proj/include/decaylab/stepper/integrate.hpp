#pragma once

#include <functional>
#include <vector>

#include "decaylab/stepper/etdrk4.hpp"

namespace decaylab::stepper {

struct DtPolicy {
  enum class Kind { fixed, adaptive };
  Kind kind = Kind::fixed;
  double dt = 1e-3;
  // Adaptive only: halve dt when |B(u,u)|/|u| grows by more than this factor
  // between steps, and never exceed cfl_suggest.
  double growth_limit = 1.1;
  // A step smaller than this fraction of the horizon is treated as blow-up.
  double collapse_fraction = 1e-12;

  static DtPolicy fixed(double dt) { return {Kind::fixed, dt}; }
  static DtPolicy adaptive(double dt) { return {Kind::adaptive, dt}; }
};

struct Observers {
  // Called once per time in the observation mesh, with the state at exactly
  // that time.
  std::function<void(const RunState&)> on_observation;
  // Called after every accepted step.
  std::function<void(const RunState&)> on_step;
};

struct IntegrationResult {
  RunState final_state;
  std::size_t observations = 0;
  long steps = 0;
};

// Steps from state.t to t_end, landing exactly on every mesh time and on
// t_end. Mesh times outside [state.t, t_end] are rejected.
IntegrationResult integrate(const Etdrk4& scheme, RunState state, double t_end, const DtPolicy& policy,
                            const std::vector<double>& observation_times, const Observers& observers = {});

IntegrationResult integrate(RunState state, double t_end, const DtPolicy& policy,
                            const std::vector<double>& observation_times, const Observers& observers = {});

}  // namespace decaylab::stepper
