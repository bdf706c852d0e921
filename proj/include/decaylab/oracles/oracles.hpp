#pragma once

#include "decaylab/spectral/field.hpp"

namespace decaylab::oracles {

// exp(-t |k|^{2 theta}) u0(k), computed mode by mode from the grid shape
// alone. Throws DomainError for t < 0.
spectral::SpectralField heat_oracle(const spectral::SpectralField& u0, double theta, double t);

// Exact solution of u_t + (u^2)_x = u_xx on a 1D periodic grid through
// u = -(log phi)_x, phi_t = phi_xx, phi_0 = exp(-integral u0). phi is carried on
// a grid `refine` times finer. u0 must have zero mean. Accurate while the
// potential's oscillation stays below about 20.
spectral::PhysicalField cole_hopf(const spectral::PhysicalField& u0, double t, int refine = 4);

}  // namespace decaylab::oracles
