#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "decaylab/errors.hpp"

namespace decaylab::energy {

enum class WeightRule { linear_heat, burgers_sobolev, burgers_l2, general_l2, empirical };

std::string to_string(WeightRule r);
WeightRule weight_rule_from_string(const std::string& s);

struct WeightParams {
  double D0 = 0.0;
  // C[n] for n = 1..N_max; C[0] is unused and kept at 0.
  std::vector<double> C;
  double u0_norm = 0.0;
  double Caux = 1.0;
};

struct WeightSequence {
  WeightRule rule = WeightRule::linear_heat;
  int n_max = 0;
  WeightParams params;
  std::vector<double> values;  // alpha_0 .. alpha_{n_max}
  // Calibration diagnostics (empirical rule only).
  bool budget_capped = false;
  std::vector<int> violated_orders;
};

// C_n = K (1 + n)^p for n = 0..N (index 0 is set to 0).
std::vector<double> kato_ponce_constants(int N, double K = 2.0, double p = 0.5);

// Recursions, generic over the number type so rational inputs stay exact.
template <class Num>
std::vector<Num> linear_heat_recursion(int N) {
  std::vector<Num> a(N + 1, Num(1));
  for (int n = 1; n <= N; ++n) a[n] = Num(2) * a[n - 1] / Num(n);
  return a;
}

// c83[n] = C_n^{8/3}, u83 = |u_0|^{8/3}.
template <class Num>
std::vector<Num> burgers_sobolev_recursion(int N, const std::vector<Num>& c83, Num caux, Num u83) {
  std::vector<Num> a(N + 1, Num(1));
  if (N == 0) return a;
  const Num three_quarters = Num(3) / Num(4);
  a[1] = three_quarters - three_quarters * caux * c83[1] * u83;
  if (!(a[1] > Num(0))) return a;
  for (int n = 2; n <= N; ++n) a[n] = three_quarters * a[n - 1] / (Num(n) + three_quarters * c83[n] * (caux / a[1]) * u83);
  return a;
}

template <class Num>
std::vector<Num> burgers_l2_recursion(int N, const std::vector<Num>& C, Num D0) {
  std::vector<Num> a(N + 1, Num(1));
  const Num s = Num(1) + D0;
  const Num s4 = s * s * s * s;
  for (int n = 1; n <= N; ++n) {
    const Num c4 = C[n] * C[n] * C[n] * C[n];
    a[n] = a[n - 1] / (Num(2) * c4 * s4);
  }
  return a;
}

template <class Num>
std::vector<Num> general_recursion(int N, const std::vector<Num>& C, Num D0) {
  std::vector<Num> a(N + 1, Num(1));
  Num pw = Num(1);
  for (int n = 1; n <= N; ++n) {
    pw = pw * D0;
    a[n] = Num(1) / (C[n] * pw);
  }
  return a;
}

WeightSequence weights_linear(int N);
// SmallnessViolation when alpha_1 <= 0; the threshold reported is the largest
// admissible |u_0|.
WeightSequence weights_burgers_sobolev(int N, const std::vector<double>& C, double Caux, double u0_norm);
WeightSequence weights_burgers_l2(int N, const std::vector<double>& C, double D0);
// DomainError for D0 <= 0.
WeightSequence weights_general(int N, const std::vector<double>& C, double D0);

nlohmann::json weights_to_json(const WeightSequence& w);
WeightSequence weights_from_json(const nlohmann::json& j);

}  // namespace decaylab::energy
