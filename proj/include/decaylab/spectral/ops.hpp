#pragma once

#include <utility>

#include "decaylab/spectral/field.hpp"
#include "decaylab/spectral/symbol.hpp"

namespace decaylab::spectral {

// out(k) = Z(k) f(k); the k = 0 mode of the result is zero.
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& z);
SpectralField apply_multiplier(const SpectralField& f, const SymbolTable& z);

// |k|^{2s} f(k), zero mode cleared. Throws DomainError for s < 0 when f has
// a mean.
SpectralField fractional_laplacian(const SpectralField& f, double s);

// exp(-t |k|^{2 theta}) f(k). Throws DomainError for t < 0 or theta <= 0.
SpectralField semigroup_apply(const SpectralField& f, double theta, double t);

// volume * sum_c sum_{k != 0} |k|^{2s} |c(k)|^2. Throws DomainError for s <= 0
// when f has a mean.
double sobolev_norm2(const SpectralField& f, double s);
double sobolev_norm(const SpectralField& f, double s);
// Plain L2 norm including the mean.
double l2_norm(const SpectralField& f);

// Real L2 pairing, volume * sum Re(conj f(k) g(k)).
double inner_product(const SpectralField& f, const SpectralField& g);

SpectralField remove_mean(const SpectralField& f);
// Zero every mode removed by the 2/3 rule.
SpectralField dealias(const SpectralField& f);

// Pointwise product of inputs truncated by the 2/3 rule, truncated again.
// Either both fields have m components (componentwise product) or one of them
// is scalar.
SpectralField dealias_product(const SpectralField& f, const SpectralField& g);
// All products a_i b_j, component index i*b.components() + j.
SpectralField tensor_product(const SpectralField& a, const SpectralField& b);

struct InterpolationCheck {
  double lhs;
  double rhs;
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12); }
};
// lhs = |f|_{(1-l) s1 + l s2}, rhs = |f|_{s1}^{1-l} |f|_{s2}^l.
InterpolationCheck interpolation_check(const SpectralField& f, double s1, double s2, double lambda);

}  // namespace decaylab::spectral
