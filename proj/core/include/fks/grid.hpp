#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fks/defs.hpp"

namespace fks {

// Uniform periodic grid on [-pi, pi)^d, d in {1, 2}. n nodes per dimension
// (a power of two, >= 8), spacing h = 2 pi / n, node x_j = -pi + j h.
// 2-d data is row-major: index i = i1 * n + i2 for the point (x_{i1}, x_{i2}).
struct TorusGrid {
  int d = 1;
  std::size_t n = 8;

  TorusGrid() = default;
  TorusGrid(int d_, std::size_t n_);  // validates d and n

  double h() const { return kTwoPi / double(n); }
  std::size_t size() const { return d == 1 ? n : n * n; }
  double node(std::size_t j) const { return -kPi + double(j) * h(); }
  double cell_volume() const { return d == 1 ? h() : h() * h(); }
  double volume() const { return d == 1 ? kTwoPi : kTwoPi * kTwoPi; }
  // FFT storage order: wavenumber k lives at index k mod n.
  long wavenumber(std::size_t i) const {
    return long(i) < long(n / 2) ? long(i) : long(i) - long(n);
  }
  bool operator==(const TorusGrid&) const = default;
};

struct Field {
  TorusGrid grid;
  std::vector<double> v;

  Field() = default;
  explicit Field(const TorusGrid& g) : grid(g), v(g.size(), 0.0) {}
};

// Fourier coefficients with mean normalization: c_k = (2 pi)^{-d} int f e^{-ik.x},
// so c_0 is the mean of f. Same storage order as Field (k mod n per axis).
struct SpectralField {
  TorusGrid grid;
  std::vector<std::complex<double>> c;

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g) : grid(g), c(g.size()) {}
};

SpectralField transform(const Field& f);
Field inverse_transform(const SpectralField& s);

// Trigonometric interpolant and its partial derivatives at an arbitrary point
// x[0..d-1] (direct mode sum; exact for band-limited data).
double eval_interpolant(const SpectralField& s, const double* x);
double eval_interpolant_deriv(const SpectralField& s, const double* x, int dx1, int dx2 = 0);

}  // namespace fks
