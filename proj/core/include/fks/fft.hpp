#pragma once

#include <complex>
#include <cstddef>

namespace fks {

bool is_pow2(std::size_t n);

// In-place iterative radix-2 complex FFT, length a power of two.
// sign = -1: forward sum_j a_j e^{-2 pi i jk/n}; sign = +1: unscaled inverse.
// Twiddles come from a per-call table (one std::polar per factor), so the
// result is bit-identical run to run, machine to machine with the same libm.
void fft_pow2(std::complex<double>* data, std::size_t n, int sign);

// 2-d transform of an n x n row-major array: rows then columns.
void fft2_pow2(std::complex<double>* data, std::size_t n, int sign);

}  // namespace fks
