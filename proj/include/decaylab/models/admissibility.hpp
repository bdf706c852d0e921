#pragma once

#include <array>
#include <string>
#include <variant>

#include "decaylab/models/model.hpp"

namespace decaylab::models {

struct AdmissibilityReport {
  Rational theta, beta_c;
  // The four lower-bound terms and two upper-bound terms on theta.
  std::array<Rational, 4> lower_terms;
  std::array<Rational, 2> upper_terms;
  Rational lower_bound, upper_bound;
  bool functional_ok = false;
  // Two-sided condition for the mild-solution construction.
  Rational mild_lower, mild_upper;
  bool mild_ok = false;
  std::string note;
};

AdmissibilityReport check_admissibility(const ModelSpec& spec);
// The same bounds for arbitrary degrees, used for alternative operator
// assignments.
AdmissibilityReport admissibility_for(Rational beta_R, Rational beta_S, Rational beta_T, int d, Rational theta);

struct ExponentWitness {
  Rational delta0, zeta0, delta0p, zeta0p, gamma, zeta;
};

struct InfeasibilityCertificate {
  std::string inequality;
  // The violated requirement reads lower < upper.
  Rational lower, upper;
};

using ExponentResult = std::variant<ExponentWitness, InfeasibilityCertificate>;

// Midpoint choice in the order delta0, delta0', gamma.
ExponentResult admissible_exponents(const ModelSpec& spec);

// Re-checks every strict inequality of the exponent system; returns the
// first failure, empty when all hold.
std::string verify_witness(const ModelSpec& spec, const ExponentWitness& w);

}  // namespace decaylab::models
