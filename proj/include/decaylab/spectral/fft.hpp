#pragma once

#include <complex>

#include "decaylab/spectral/grid.hpp"

namespace decaylab::spectral::fft {

// In-place unnormalized multi-dimensional DFT over one component block of
// grid.size() values. forward: sum_x f(x) e^{-ik.x}; backward: e^{+ik.x}.
// Plans are cached per shape; plan creation is serialized, execution is
// reentrant.
void forward(const Grid& grid, std::complex<double>* data);
void backward(const Grid& grid, std::complex<double>* data);

}  // namespace decaylab::spectral::fft
