#include "fks/spectral.hpp"

#include <cmath>

namespace fks {

namespace {

template <typename F>
void for_each_mode(const TorusGrid& g, F&& fn) {
  // fn(index, k1, k2); k2 = 0 in 1-d
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i) fn(i, g.wavenumber(i), 0L);
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2)
        fn(i1 * g.n + i2, g.wavenumber(i1), g.wavenumber(i2));
  }
}

}  // namespace

SpectralField frac_laplacian(const SpectralField& s, double alpha) {
  SpectralField out(s.grid);
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    const double k2norm = double(k1) * double(k1) + double(k2) * double(k2);
    out.c[i] = k2norm == 0.0 ? 0.0 : std::pow(k2norm, alpha / 2.0) * s.c[i];
  });
  return out;
}

SpectralField laplacian(const SpectralField& s) {
  SpectralField out(s.grid);
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    out.c[i] = -(double(k1) * double(k1) + double(k2) * double(k2)) * s.c[i];
  });
  return out;
}

std::vector<SpectralField> gradient(const SpectralField& s) {
  const long nyq = -long(s.grid.n / 2);
  std::vector<SpectralField> out(s.grid.d, SpectralField(s.grid));
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    const long kj[2] = {k1, k2};
    for (int j = 0; j < s.grid.d; ++j)
      out[j].c[i] = kj[j] == nyq ? 0.0 : std::complex<double>(0.0, double(kj[j])) * s.c[i];
  });
  return out;
}

std::vector<SpectralField> b_operator(const SpectralField& s) {
  const long nyq = -long(s.grid.n / 2);
  std::vector<SpectralField> out(s.grid.d, SpectralField(s.grid));
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    const double denom = -(double(k1) * double(k1) + double(k2) * double(k2)) - 1.0;
    const long kj[2] = {k1, k2};
    for (int j = 0; j < s.grid.d; ++j)
      out[j].c[i] = kj[j] == nyq ? 0.0
                                 : std::complex<double>(0.0, double(kj[j])) / denom * s.c[i];
  });
  return out;
}

SpectralField elliptic_solve(const SpectralField& s) {
  SpectralField out(s.grid);
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    out.c[i] = s.c[i] / (-(double(k1) * double(k1) + double(k2) * double(k2)) - 1.0);
  });
  return out;
}

void dealias_23(SpectralField& s) {
  const long cut = long(s.grid.n) / 3;
  for_each_mode(s.grid, [&](std::size_t i, long k1, long k2) {
    if (std::labs(k1) > cut || std::labs(k2) > cut) s.c[i] = 0.0;
  });
}

}  // namespace fks
