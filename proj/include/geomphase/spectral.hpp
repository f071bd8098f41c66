#pragma once

#include <cstddef>
#include <span>

#include "geomphase/grid.hpp"

namespace geomphase::spectral {

// Unnormalized DFT pair backed by cached FFTW plans:
//   forward: out_j = sum_k in_k e^{-2 pi i jk/n}
//   inverse: out_k = sum_j in_j e^{+2 pi i jk/n}
// In-place calls (in.data() == out.data()) are allowed. Safe to call from
// several threads at once.
void forward(std::span<const cplx> in, std::span<cplx> out);
void inverse(std::span<const cplx> in, std::span<cplx> out);

}  // namespace geomphase::spectral
