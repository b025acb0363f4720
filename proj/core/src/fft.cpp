#include "fks/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fks {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::complex<double>* a, std::size_t n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: length must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Each twiddle is computed directly from its index (no running products),
  // cached per thread for the current (n, sign).
  static thread_local std::vector<std::complex<double>> tw;
  static thread_local std::size_t tw_n = 0;
  static thread_local int tw_sign = 0;
  if (tw_n != n || tw_sign != sign) {
    tw.resize(n / 2);
    const double base = double(sign) * 2.0 * 3.14159265358979323846 / double(n);
    for (std::size_t j = 0; j < n / 2; ++j) tw[j] = std::polar(1.0, base * double(j));
    tw_n = n;
    tw_sign = sign;
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> w = tw[j * stride];
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + half] * w;
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

void fft2_pow2(std::complex<double>* a, std::size_t n, int sign) {
  for (std::size_t row = 0; row < n; ++row) fft_pow2(a + row * n, n, sign);
  std::vector<std::complex<double>> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
    fft_pow2(col.data(), n, sign);
    for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
  }
}

}  // namespace fks
