#pragma once

#include <complex>
#include <vector>

namespace wga {

/// In-place n-dimensional complex DFT over a row-major tensor (FFTW behind
/// the scenes). sign = -1 forward, +1 backward; the backward transform is
/// unnormalized, exactly as FFTW leaves it.
void dft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign);

} // namespace wga
