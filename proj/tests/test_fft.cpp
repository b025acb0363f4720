#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "fks/defs.hpp"
#include "fks/fft.hpp"

using namespace fks;
using cplx = std::complex<double>;

namespace {

// O(n^2) reference transform, textbook sum.
std::vector<cplx> dft_brute(const std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += a[j] * std::polar(1.0, sign * kTwoPi * double(j * k % n) / double(n));
    out[k] = acc;
  }
  return out;
}

std::vector<cplx> random_signal(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(n);
  for (auto& z : a) z = cplx(u(gen), u(gen));
  return a;
}

}  // namespace

TEST_CASE("is_pow2 classifies sizes") {
  CHECK(is_pow2(1));
  CHECK(is_pow2(2));
  CHECK(is_pow2(64));
  CHECK(is_pow2(std::size_t(1) << 40));
  CHECK_FALSE(is_pow2(0));
  CHECK_FALSE(is_pow2(3));
  CHECK_FALSE(is_pow2(96));
}

TEST_CASE("fft of a delta is flat") {
  std::vector<cplx> a(16, 0.0);
  a[0] = 1.0;
  fft_pow2(a.data(), a.size(), -1);
  for (const auto& z : a) {
    CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(z.imag() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("fft of a pure cosine concentrates on +-k") {
  const std::size_t n = 32;
  std::vector<cplx> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = std::cos(3.0 * kTwoPi * double(j) / double(n));
  fft_pow2(a.data(), n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const double expect = (k == 3 || k == n - 3) ? double(n) / 2.0 : 0.0;
    CHECK(std::abs(a[k] - cplx(expect, 0.0)) < 1e-11);
  }
}

TEST_CASE("fft matches the brute-force transform") {
  for (std::size_t n : {8, 64, 128}) {
    std::vector<cplx> a = random_signal(n, 17 + unsigned(n));
    std::vector<cplx> ref = dft_brute(a, -1);
    std::vector<cplx> b = a;
    fft_pow2(b.data(), n, -1);
    double scale = 0.0;
    for (const auto& z : ref) scale = std::max(scale, std::abs(z));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(b[k] - ref[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("inverse transform is the unscaled adjoint") {
  const std::size_t n = 64;
  std::vector<cplx> a = random_signal(n, 5);
  std::vector<cplx> b = a;
  fft_pow2(b.data(), n, -1);
  fft_pow2(b.data(), n, +1);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(b[j] - double(n) * a[j]) < 1e-12 * n);
}

TEST_CASE("fft preserves the discrete Parseval identity") {
  const std::size_t n = 128;
  std::vector<cplx> a = random_signal(n, 23);
  double time_energy = 0.0;
  for (const auto& z : a) time_energy += std::norm(z);
  fft_pow2(a.data(), n, -1);
  double freq_energy = 0.0;
  for (const auto& z : a) freq_energy += std::norm(z);
  CHECK(freq_energy / double(n) == doctest::Approx(time_energy).epsilon(1e-13));
}

TEST_CASE("fft is bit-identical across repeat calls") {
  const std::size_t n = 256;
  std::vector<cplx> a = random_signal(n, 99), b = a;
  fft_pow2(a.data(), n, -1);
  fft_pow2(b.data(), n, -1);
  CHECK(std::memcmp(a.data(), b.data(), n * sizeof(cplx)) == 0);
}

TEST_CASE("2-d fft separates on rank-one data") {
  const std::size_t n = 16;
  std::vector<cplx> row = random_signal(n, 3), col = random_signal(n, 4);
  std::vector<cplx> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = col[i] * row[j];
  fft2_pow2(a.data(), n, -1);
  std::vector<cplx> rhat = row, chat = col;
  fft_pow2(rhat.data(), n, -1);
  fft_pow2(chat.data(), n, -1);
  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a[i * n + j] - chat[i] * rhat[j]) <= 1e-12 * scale);
}

TEST_CASE("2-d round trip recovers samples") {
  const std::size_t n = 32;
  std::vector<cplx> a = random_signal(n * n, 8), b = a;
  fft2_pow2(b.data(), n, -1);
  fft2_pow2(b.data(), n, +1);
  for (std::size_t i = 0; i < n * n; ++i) CHECK(std::abs(b[i] - double(n) * double(n) * a[i]) < 1e-9);
}
