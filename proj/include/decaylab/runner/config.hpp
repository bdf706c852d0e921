#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "decaylab/energy/weights.hpp"
#include "decaylab/models/model.hpp"
#include "decaylab/stepper/integrate.hpp"

namespace decaylab::runner {

inline constexpr int kSchemaVersion = 1;

struct InitialData {
  // single_mode | random_bandlimited | from_file
  std::string profile = "random_bandlimited";
  // single_mode: integer wavevector, amplitude, component, "cos" or "sin".
  std::vector<int> k{1};
  double amplitude = 1.0;
  int component = 0;
  std::string phase = "cos";
  // random_bandlimited: modes with kmin <= |k| <= kmax, amplitude ~ |k|^slope,
  // rescaled to target_norm in H^norm_space.
  double kmin = 1.0, kmax = 8.0;
  std::optional<std::uint64_t> seed;
  double target_norm = 1e-2;
  double norm_space = 0.0;
  double slope = 0.0;
  // from_file: a field record.
  std::string path;
  // Added to the k = 0 coefficient of component 0 after normalization.
  double mean = 0.0;
};

struct ObservationMesh {
  // log | uniform | explicit; t = 0 and T are always included.
  std::string kind = "log";
  int count = 60;
  double t_min = 1e-3;
  std::vector<double> times;
};

struct WeightConfig {
  energy::WeightRule rule = energy::WeightRule::linear_heat;
  double K = 2.0, p = 0.5;
  std::vector<double> C;  // explicit C_1..C_N overrides K, p
  double Caux = 1.0;
  std::optional<double> D0;       // measured from the trajectory when absent
  std::optional<double> u0_norm;  // measured from the data when absent
};

struct RunSwitches {
  bool calibrate = false;
  bool mild = false;
  std::vector<int> decay_orders{1, 2, 3, 4, 5};
  std::optional<double> t0_threshold;
  double mild_T = 0.1;
  int mild_mesh = 64;
  std::optional<double> gamma;
  double monotone_tol = 1e-10;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string model = "burgers";
  std::optional<nlohmann::json> custom_model;
  std::optional<Rational> theta;
  std::vector<int> N{128};
  std::vector<double> L;
  InitialData initial;
  double T = 1.0;
  ObservationMesh observe;
  stepper::DtPolicy dt = stepper::DtPolicy::adaptive(1e-3);
  WeightConfig weights;
  int n_max = 24;
  RunSwitches options;

  models::ModelSpec build_model() const;
  spectral::Grid build_grid() const;
  std::vector<double> observation_times() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace decaylab::runner
