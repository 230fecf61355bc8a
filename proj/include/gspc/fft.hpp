#pragma once

#include <span>
#include <vector>

#include "gspc/common.hpp"

namespace gspc {

/// Discrete Fourier transform of any length >= 1.
///
/// Forward: X_k = sum_n x_n exp(-j 2 pi k n / L). The inverse carries the
/// 1/L factor. Powers of two run an iterative radix-2 Cooley-Tukey; other
/// lengths go through Bluestein's chirp-z on a power-of-two grid.
std::vector<cplx> fft(std::span<const cplx> x, bool inverse = false);
CVector fft(const CVector& x, bool inverse = false);

std::size_t next_pow2(std::size_t n);

}  // namespace gspc
