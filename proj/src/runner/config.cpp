#include "decaylab/runner/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "decaylab/errors.hpp"
#include "decaylab/models/symbol_parser.hpp"

namespace decaylab::runner {

models::ModelSpec ExperimentConfig::build_model() const {
  if (custom_model) {
    models::ModelSpec m = models::model_from_json(*custom_model);
    return theta ? m.with_theta(*theta) : m;
  }
  return models::make_model(model, theta);
}

spectral::Grid ExperimentConfig::build_grid() const {
  std::vector<double> l = L.empty() ? std::vector<double>(N.size(), 2.0 * std::numbers::pi) : L;
  return spectral::Grid(N, l);
}

std::vector<double> ExperimentConfig::observation_times() const {
  std::vector<double> t{0.0};
  if (observe.kind == "log") {
    if (!(observe.t_min > 0.0 && observe.t_min < T)) throw ConfigError("log mesh needs 0 < t_min < T");
    const int n = std::max(observe.count, 2);
    for (int i = 0; i < n; ++i)
      t.push_back(i == n - 1 ? T : observe.t_min * std::pow(T / observe.t_min, static_cast<double>(i) / (n - 1)));
  } else if (observe.kind == "uniform") {
    const int n = std::max(observe.count, 1);
    for (int i = 1; i <= n; ++i) t.push_back(i == n ? T : T * i / n);
  } else if (observe.kind == "explicit") {
    for (double x : observe.times) {
      if (!(x >= 0.0 && x <= T)) throw ConfigError("observation time outside [0, T]");
      t.push_back(x);
    }
    t.push_back(T);
  } else {
    throw ConfigError("unknown observation mesh '" + observe.kind + "'");
  }
  if (options.mild) t.push_back(std::min(options.mild_T, T));
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json init{{"profile", initial.profile}, {"mean", initial.mean}};
  if (initial.profile == "single_mode") {
    init["k"] = initial.k;
    init["amplitude"] = initial.amplitude;
    init["component"] = initial.component;
    init["phase"] = initial.phase;
  } else if (initial.profile == "random_bandlimited") {
    init["kmin"] = initial.kmin;
    init["kmax"] = initial.kmax;
    if (initial.seed) init["seed"] = *initial.seed;
    init["target_norm"] = initial.target_norm;
    init["norm_space"] = initial.norm_space;
    init["slope"] = initial.slope;
  } else {
    init["path"] = initial.path;
  }
  nlohmann::json obs{{"kind", observe.kind}};
  if (observe.kind == "explicit") obs["times"] = observe.times;
  else obs["count"] = observe.count;
  if (observe.kind == "log") obs["t_min"] = observe.t_min;

  nlohmann::json w{{"rule", energy::to_string(weights.rule)}, {"K", weights.K}, {"p", weights.p},
                   {"Caux", weights.Caux}};
  if (!weights.C.empty()) w["C"] = weights.C;
  if (weights.D0) w["D0"] = *weights.D0;
  if (weights.u0_norm) w["u0_norm"] = *weights.u0_norm;

  nlohmann::json opt{{"calibrate", options.calibrate},   {"mild", options.mild},
                     {"decay_orders", options.decay_orders}, {"mild_T", options.mild_T},
                     {"mild_mesh", options.mild_mesh},     {"monotone_tol", options.monotone_tol}};
  if (options.t0_threshold) opt["t0_threshold"] = *options.t0_threshold;
  if (options.gamma) opt["gamma"] = *options.gamma;

  nlohmann::json j{{"schema_version", schema_version},
                   {"grid", {{"N", N}, {"L", build_grid().l()}}},
                   {"initial", init},
                   {"T", T},
                   {"observe", obs},
                   {"dt", {{"policy", dt.kind == stepper::DtPolicy::Kind::fixed ? "fixed" : "adaptive"},
                           {"dt", dt.dt}}},
                   {"weights", w},
                   {"n_max", n_max},
                   {"options", opt}};
  if (custom_model) j["model"] = *custom_model;
  else j["model"] = model;
  if (theta) j["theta"] = theta->str();
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != kSchemaVersion)
      throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    const auto& m = j.at("model");
    if (m.is_string()) c.model = m.get<std::string>();
    else {
      c.custom_model = m;
      c.model = m.value("name", std::string("custom"));
    }
    if (j.contains("theta")) c.theta = models::rational_from_json(j.at("theta"));
    const auto& g = j.at("grid");
    c.N = g.at("N").get<std::vector<int>>();
    if (g.contains("L")) c.L = g.at("L").get<std::vector<double>>();
    c.T = j.at("T").get<double>();
    if (!(c.T > 0.0)) throw ConfigError("T must be positive");

    if (j.contains("initial")) {
      const auto& i = j.at("initial");
      auto& d = c.initial;
      d.profile = i.value("profile", d.profile);
      d.mean = i.value("mean", 0.0);
      if (d.profile == "single_mode") {
        d.k = i.value("k", d.k);
        d.amplitude = i.value("amplitude", 1.0);
        d.component = i.value("component", 0);
        d.phase = i.value("phase", std::string("cos"));
        if (d.phase != "cos" && d.phase != "sin") throw ConfigError("single_mode phase must be cos or sin");
      } else if (d.profile == "random_bandlimited") {
        d.kmin = i.value("kmin", d.kmin);
        d.kmax = i.value("kmax", d.kmax);
        if (!i.contains("seed")) throw ConfigError("random_bandlimited data needs a seed");
        d.seed = i.at("seed").get<std::uint64_t>();
        d.target_norm = i.value("target_norm", d.target_norm);
        d.norm_space = i.value("norm_space", d.norm_space);
        d.slope = i.value("slope", 0.0);
      } else if (d.profile == "from_file") {
        d.path = i.at("path").get<std::string>();
      } else {
        throw ConfigError("unknown initial profile '" + d.profile + "'");
      }
    }
    if (j.contains("observe")) {
      const auto& o = j.at("observe");
      c.observe.kind = o.value("kind", c.observe.kind);
      c.observe.count = o.value("count", c.observe.count);
      c.observe.t_min = o.value("t_min", c.observe.t_min);
      c.observe.times = o.value("times", std::vector<double>{});
    }
    if (j.contains("dt")) {
      const auto& d = j.at("dt");
      const std::string pol = d.value("policy", std::string("adaptive"));
      const double dt = d.value("dt", 1e-3);
      if (pol == "fixed") c.dt = stepper::DtPolicy::fixed(dt);
      else if (pol == "adaptive") c.dt = stepper::DtPolicy::adaptive(dt);
      else throw ConfigError("dt policy must be fixed or adaptive");
      if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    }
    if (j.contains("weights")) {
      const auto& w = j.at("weights");
      c.weights.rule = energy::weight_rule_from_string(w.value("rule", std::string("linear_heat")));
      c.weights.K = w.value("K", 2.0);
      c.weights.p = w.value("p", 0.5);
      c.weights.C = w.value("C", std::vector<double>{});
      c.weights.Caux = w.value("Caux", 1.0);
      if (w.contains("D0")) c.weights.D0 = w.at("D0").get<double>();
      if (w.contains("u0_norm")) c.weights.u0_norm = w.at("u0_norm").get<double>();
    }
    c.n_max = j.value("n_max", 24);
    if (c.n_max < 0) throw ConfigError("n_max must be nonnegative");
    if (j.contains("options")) {
      const auto& o = j.at("options");
      auto& s = c.options;
      s.calibrate = o.value("calibrate", false);
      s.mild = o.value("mild", false);
      s.decay_orders = o.value("decay_orders", s.decay_orders);
      if (o.contains("t0_threshold")) s.t0_threshold = o.at("t0_threshold").get<double>();
      s.mild_T = o.value("mild_T", s.mild_T);
      s.mild_mesh = o.value("mild_mesh", s.mild_mesh);
      if (o.contains("gamma")) s.gamma = o.at("gamma").get<double>();
      s.monotone_tol = o.value("monotone_tol", s.monotone_tol);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.build_grid();
  c.observation_times();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  ExperimentConfig c = ExperimentConfig::from_json(j);
  if (c.initial.profile == "from_file" && std::filesystem::path(c.initial.path).is_relative())
    c.initial.path = (path.parent_path() / c.initial.path).string();
  return c;
}

}  // namespace decaylab::runner
