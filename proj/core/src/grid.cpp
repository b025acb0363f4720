#include "fks/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "fks/fft.hpp"

namespace fks {

TorusGrid::TorusGrid(int d_, std::size_t n_) : d(d_), n(n_) {
  if (d != 1 && d != 2) throw std::invalid_argument("TorusGrid: d must be 1 or 2");
  if (n < 8 || !is_pow2(n)) throw std::invalid_argument("TorusGrid: n must be a power of two >= 8");
}

namespace {

// The grid starts at x_0 = -pi rather than 0, so e^{-ik x_j} = (-1)^k e^{-ikjh}.
// With n even the parity of k equals the parity of its storage index.
inline double phase_sign_1d(std::size_t i) { return (i & 1u) ? -1.0 : 1.0; }

}  // namespace

SpectralField transform(const Field& f) {
  const TorusGrid& g = f.grid;
  SpectralField s(g);
  const std::size_t total = g.size();
  for (std::size_t i = 0; i < total; ++i) s.c[i] = f.v[i];
  if (g.d == 1) {
    fft_pow2(s.c.data(), g.n, -1);
  } else {
    fft2_pow2(s.c.data(), g.n, -1);
  }
  const double scale = 1.0 / double(total);
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i) s.c[i] *= scale * phase_sign_1d(i);
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2)
        s.c[i1 * g.n + i2] *= scale * phase_sign_1d(i1 + i2);
  }
  return s;
}

Field inverse_transform(const SpectralField& s) {
  const TorusGrid& g = s.grid;
  std::vector<std::complex<double>> buf(s.c);
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i) buf[i] *= phase_sign_1d(i);
    fft_pow2(buf.data(), g.n, +1);
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2)
        buf[i1 * g.n + i2] *= phase_sign_1d(i1 + i2);
    fft2_pow2(buf.data(), g.n, +1);
  }
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f.v[i] = buf[i].real();
  return f;
}

namespace {

inline std::complex<double> ik_pow(long k, int order) {
  // (ik)^order without complex pow: cycle through i^order.
  const double kp = std::pow(double(k), double(order));
  switch (order & 3) {
    case 0: return {kp, 0.0};
    case 1: return {0.0, kp};
    case 2: return {-kp, 0.0};
    default: return {0.0, -kp};
  }
}

}  // namespace

double eval_interpolant(const SpectralField& s, const double* x) {
  return eval_interpolant_deriv(s, x, 0, 0);
}

double eval_interpolant_deriv(const SpectralField& s, const double* x, int dx1, int dx2) {
  const TorusGrid& g = s.grid;
  const std::size_t n = g.n;
  if (g.d == 1) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const long k = g.wavenumber(i);
      acc += s.c[i] * ik_pow(k, dx1) * std::polar(1.0, double(k) * x[0]);
    }
    return acc.real();
  }
  // Precompute per-axis phases, then one pass over the coefficient table.
  std::vector<std::complex<double>> e1(n), e2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = g.wavenumber(i);
    e1[i] = ik_pow(k, dx1) * std::polar(1.0, double(k) * x[0]);
    e2[i] = ik_pow(k, dx2) * std::polar(1.0, double(k) * x[1]);
  }
  std::complex<double> acc = 0.0;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    std::complex<double> row = 0.0;
    const std::complex<double>* c = s.c.data() + i1 * n;
    for (std::size_t i2 = 0; i2 < n; ++i2) row += c[i2] * e2[i2];
    acc += e1[i1] * row;
  }
  return acc.real();
}

}  // namespace fks
