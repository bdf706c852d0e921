#include "decaylab/stepper/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decaylab/errors.hpp"
#include "decaylab/spectral/ops.hpp"

namespace decaylab::stepper {
namespace {

void notify(const std::function<void(const RunState&)>& fn, const RunState& s) {
  if (!fn) return;
  try {
    fn(s);
  } catch (const BlowUp&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("observer failed at t = " + std::to_string(s.t) + ": " + e.what());
  }
}

}  // namespace

IntegrationResult integrate(const Etdrk4& scheme, RunState state, double t_end, const DtPolicy& policy,
                            const std::vector<double>& observation_times, const Observers& observers) {
  if (!(t_end > state.t)) throw DomainError("integration end time must exceed the start time");
  if (!(policy.dt > 0.0)) throw DomainError("time step must be positive");
  std::vector<double> mesh = observation_times;
  std::sort(mesh.begin(), mesh.end());
  for (double t : mesh)
    if (t < state.t || t > t_end) throw DomainError("observation time outside the integration window");

  IntegrationResult res;
  const double t_start = state.t;
  const double horizon = t_end - t_start;
  const double land_tol = 1e-12 * std::max(1.0, std::fabs(t_end));
  std::size_t next_obs = 0;
  auto emit_due = [&] {
    while (next_obs < mesh.size() && mesh[next_obs] <= state.t + land_tol) {
      RunState snap = state;
      snap.t = mesh[next_obs];
      notify(observers.on_observation, snap);
      ++next_obs;
      ++res.observations;
    }
  };

  emit_due();
  double dt = policy.dt;
  double prev_ratio = -1.0;
  const bool adaptive = policy.kind == DtPolicy::Kind::adaptive;
  while (state.t < t_end - land_tol) {
    if (adaptive) dt = std::min(dt, scheme.cfl_suggest(state.field));
    if (dt < policy.collapse_fraction * horizon)
      throw BlowUp("time step collapsed", state.t, spectral::l2_norm(state.field));
    const double target = next_obs < mesh.size() ? std::min(mesh[next_obs], t_end) : t_end;
    double h = dt;
    bool lands = false;
    if (state.t + h >= target - land_tol) {
      h = target - state.t;
      lands = true;
    }
    SpectralField n0;
    RunState next = scheme.step(state, h, adaptive ? &n0 : nullptr);
    if (lands) next.t = target;
    if (adaptive) {
      const double un = spectral::l2_norm(state.field);
      const double ratio = un > 0.0 ? spectral::l2_norm(n0) / un : 0.0;
      if (prev_ratio > 0.0 && ratio > policy.growth_limit * prev_ratio) dt *= 0.5;
      prev_ratio = ratio;
    }
    state = std::move(next);
    ++res.steps;
    notify(observers.on_step, state);
    emit_due();
  }
  state.t = t_end;
  emit_due();
  res.final_state = std::move(state);
  return res;
}

IntegrationResult integrate(RunState state, double t_end, const DtPolicy& policy,
                            const std::vector<double>& observation_times, const Observers& observers) {
  if (!state.spec) throw DomainError("run state carries no model");
  const Etdrk4 scheme(*state.spec, state.field.grid());
  return integrate(scheme, std::move(state), t_end, policy, observation_times, observers);
}

}  // namespace decaylab::stepper
