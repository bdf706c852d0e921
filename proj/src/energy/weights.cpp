#include "decaylab/energy/weights.hpp"

namespace decaylab::energy {
namespace {

void check_constants(int N, const std::vector<double>& C) {
  if (N < 0) throw DomainError("truncation order must be nonnegative");
  if (static_cast<int>(C.size()) < N + 1)
    throw DomainError("need constants C_1..C_" + std::to_string(N) + ", got " +
                      std::to_string(C.empty() ? 0 : C.size() - 1));
  for (int n = 1; n <= N; ++n)
    if (!(C[n] > 0.0)) throw DomainError("constant C_" + std::to_string(n) + " must be positive");
}

}  // namespace

std::string to_string(WeightRule r) {
  switch (r) {
    case WeightRule::linear_heat: return "linear_heat";
    case WeightRule::burgers_sobolev: return "burgers_sobolev";
    case WeightRule::burgers_l2: return "burgers_l2";
    case WeightRule::general_l2: return "general_l2";
    case WeightRule::empirical: return "empirical";
  }
  return "empirical";
}

WeightRule weight_rule_from_string(const std::string& s) {
  for (WeightRule r : {WeightRule::linear_heat, WeightRule::burgers_sobolev, WeightRule::burgers_l2,
                       WeightRule::general_l2, WeightRule::empirical})
    if (to_string(r) == s) return r;
  throw ConfigError("unknown weight rule '" + s + "'");
}

std::vector<double> kato_ponce_constants(int N, double K, double p) {
  std::vector<double> c(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) c[n] = K * std::pow(1.0 + n, p);
  return c;
}

WeightSequence weights_linear(int N) {
  if (N < 0) throw DomainError("truncation order must be nonnegative");
  WeightSequence w;
  w.rule = WeightRule::linear_heat;
  w.n_max = N;
  w.values = linear_heat_recursion<double>(N);
  return w;
}

WeightSequence weights_burgers_sobolev(int N, const std::vector<double>& C, double Caux, double u0_norm) {
  check_constants(N, C);
  if (!(u0_norm >= 0.0)) throw DomainError("data norm must be nonnegative");
  std::vector<double> c83(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) c83[n] = std::pow(C[n], 8.0 / 3.0);
  WeightSequence w;
  w.rule = WeightRule::burgers_sobolev;
  w.n_max = N;
  w.params.C = C;
  w.params.Caux = Caux;
  w.params.u0_norm = u0_norm;
  w.values = burgers_sobolev_recursion<double>(N, c83, Caux, std::pow(u0_norm, 8.0 / 3.0));
  if (N >= 1 && !(w.values[1] > 0.0)) {
    const double threshold = std::pow(1.0 / (Caux * c83[1]), 3.0 / 8.0);
    throw SmallnessViolation("alpha_1 = 3/4 - (3/4) Caux C_1^{8/3} |u0|^{8/3} is not positive; need |u0| < " +
                                 std::to_string(threshold),
                             threshold);
  }
  return w;
}

WeightSequence weights_burgers_l2(int N, const std::vector<double>& C, double D0) {
  check_constants(N, C);
  if (!(D0 >= 0.0)) throw DomainError("D0 must be nonnegative");
  WeightSequence w;
  w.rule = WeightRule::burgers_l2;
  w.n_max = N;
  w.params.C = C;
  w.params.D0 = D0;
  w.values = burgers_l2_recursion<double>(N, C, D0);
  return w;
}

WeightSequence weights_general(int N, const std::vector<double>& C, double D0) {
  check_constants(N, C);
  if (!(D0 > 0.0)) throw DomainError("general weights need D0 > 0");
  WeightSequence w;
  w.rule = WeightRule::general_l2;
  w.n_max = N;
  w.params.C = C;
  w.params.D0 = D0;
  w.values = general_recursion<double>(N, C, D0);
  return w;
}

nlohmann::json weights_to_json(const WeightSequence& w) {
  nlohmann::json j{{"rule", to_string(w.rule)},
                   {"n_max", w.n_max},
                   {"params",
                    {{"D0", w.params.D0}, {"C", w.params.C}, {"u0_norm", w.params.u0_norm}, {"Caux", w.params.Caux}}},
                   {"values", w.values}};
  if (w.rule == WeightRule::empirical) {
    j["budget_capped"] = w.budget_capped;
    j["violated_orders"] = w.violated_orders;
  }
  return j;
}

WeightSequence weights_from_json(const nlohmann::json& j) {
  try {
    WeightSequence w;
    w.rule = weight_rule_from_string(j.at("rule").get<std::string>());
    w.values = j.at("values").get<std::vector<double>>();
    w.n_max = j.value("n_max", static_cast<int>(w.values.size()) - 1);
    if (w.values.empty() || static_cast<int>(w.values.size()) != w.n_max + 1)
      throw ConfigError("weight record needs n_max + 1 values");
    if (j.contains("params")) {
      const auto& p = j.at("params");
      w.params.D0 = p.value("D0", 0.0);
      w.params.C = p.value("C", std::vector<double>{});
      w.params.u0_norm = p.value("u0_norm", 0.0);
      w.params.Caux = p.value("Caux", 1.0);
    }
    w.budget_capped = j.value("budget_capped", false);
    w.violated_orders = j.value("violated_orders", std::vector<int>{});
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed weight record: ") + e.what());
  }
}

}  // namespace decaylab::energy
