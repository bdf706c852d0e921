#pragma once

#include <memory>
#include <optional>
#include <string>

#include "decaylab/rational.hpp"
#include "decaylab/spectral/field.hpp"
#include "decaylab/spectral/symbol.hpp"

namespace decaylab::models {

using spectral::MultiplierSymbol;
using spectral::SpectralField;

enum class Projector { none, mean_removal, leray };

std::string to_string(Projector p);
Projector projector_from_string(const std::string& s);

// u_t + (-Delta)^theta u = R(Su (x) Tu).
//
// Contraction rule: the products P[a*mT + b] = (Su)_a (Tv)_b, a < mS, b < mT,
// form the input of R, so R.in() == S.out() * T.out().
struct ModelSpec {
  std::string name;
  int d = 1;
  int components = 1;
  Rational theta{1};
  MultiplierSymbol R, S, T;
  Projector projector = Projector::mean_removal;
  bool skew_symmetric = false;
  // Su keeps the k = 0 coefficient of u (the carried mass in Keller-Segel).
  bool s_keeps_mean = false;
  bool linear = false;
  std::string note;

  ModelSpec(std::string name, int d, int components, Rational theta, MultiplierSymbol R, MultiplierSymbol S,
            MultiplierSymbol T, Projector projector, bool skew_symmetric);

  Rational beta_R() const { return R.degree(); }
  Rational beta_S() const { return S.degree(); }
  Rational beta_T() const { return T.degree(); }
  // Linear models have no critical index; their functional sits at level 0.
  Rational beta_c() const { return linear ? Rational(0) : beta_c_; }
  double theta_d() const { return theta.to_double(); }

  // Same operators, different dissipation order; beta_c recomputed.
  ModelSpec with_theta(Rational theta) const;

 private:
  Rational beta_c_;
};

Rational beta_c(const ModelSpec& spec);

// Registered names: burgers, ns2d, ns3d, sqg, ks2d, ks3d, plus linear1d,
// linear2d, linear3d (B = 0, for conservation demos). theta may only be given
// for sqg, where it must lie in [2/3, 1], and for the linear models.
ModelSpec make_model(const std::string& name, std::optional<Rational> theta = std::nullopt);
const std::vector<std::string>& registered_models();

// B(u, v) on one grid, with the symbol tables built once.
class BilinearOperator {
 public:
  BilinearOperator(const ModelSpec& spec, const spectral::Grid& grid);
  const ModelSpec& spec() const { return *spec_; }
  const spectral::Grid& grid() const { return grid_; }

  SpectralField apply(const SpectralField& u, const SpectralField& v) const;
  // The velocity-like factor Tu used for CFL estimates.
  SpectralField transport(const SpectralField& u) const;
  SpectralField project(const SpectralField& f) const;

 private:
  std::shared_ptr<const ModelSpec> spec_;
  spectral::Grid grid_;
  std::unique_ptr<spectral::SymbolTable> r_, s_, t_, p_;
};

SpectralField bilinear_apply(const ModelSpec& spec, const SpectralField& u, const SpectralField& v);
SpectralField project_subspace(const ModelSpec& spec, const SpectralField& f);

}  // namespace decaylab::models
