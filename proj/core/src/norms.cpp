#include "fks/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fks/spectral.hpp"

namespace fks {

double lp_norm(const Field& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (double v : f.v) acc += std::pow(std::abs(v), p);
  return std::pow(f.grid.cell_volume() * acc, 1.0 / p);
}

double l1_norm(const Field& f) {
  double acc = 0.0;
  for (double v : f.v) acc += std::abs(v);
  return f.grid.cell_volume() * acc;
}

double l2_norm(const Field& f) {
  double acc = 0.0;
  for (double v : f.v) acc += v * v;
  return std::sqrt(f.grid.cell_volume() * acc);
}

double linf_grid(const Field& f) {
  double m = 0.0;
  for (double v : f.v) m = std::max(m, std::abs(v));
  return m;
}

double max_grid(const Field& f) { return *std::max_element(f.v.begin(), f.v.end()); }
double min_grid(const Field& f) { return *std::min_element(f.v.begin(), f.v.end()); }

double mean(const Field& f) {
  double acc = 0.0;
  for (double v : f.v) acc += v;
  return acc / double(f.v.size());
}

namespace {

// Zero-pad the coefficient table to a 4x finer grid (same interpolant).
SpectralField zero_pad4(const SpectralField& s) {
  const TorusGrid fine(s.grid.d, s.grid.n * 4);
  SpectralField out(fine);
  const std::size_t n = s.grid.n, m = fine.n;
  if (s.grid.d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const long k = s.grid.wavenumber(i);
      out.c[std::size_t((k + long(m)) % long(m))] = s.c[i];
    }
  } else {
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        const long k1 = s.grid.wavenumber(i1), k2 = s.grid.wavenumber(i2);
        out.c[std::size_t((k1 + long(m)) % long(m)) * m + std::size_t((k2 + long(m)) % long(m))] =
            s.c[i1 * n + i2];
      }
  }
  return out;
}

double golden_max_1d(const std::function<double(double)>& f, double a, double b) {
  constexpr double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Extremum refined_extremum(const SpectralField& s, double sign) {
  const SpectralField padded = zero_pad4(s);
  const Field fine = inverse_transform(padded);
  const std::size_t m = fine.grid.n;
  std::size_t best = 0;
  for (std::size_t i = 1; i < fine.v.size(); ++i)
    if (sign * fine.v[i] > sign * fine.v[best]) best = i;

  const double hm = fine.grid.h();
  Extremum e;
  if (s.grid.d == 1) {
    const auto f = [&](double x) { return sign * eval_interpolant(s, &x); };
    e.x[0] = golden_max_1d(f, fine.grid.node(best) - hm, fine.grid.node(best) + hm);
    e.value = eval_interpolant(s, e.x);
    return e;
  }
  double x[2] = {fine.grid.node(best / m), fine.grid.node(best % m)};
  double w = hm;
  for (int sweep = 0; sweep < 30; ++sweep) {
    for (int axis = 0; axis < 2; ++axis) {
      const auto f = [&](double t) {
        double y[2] = {x[0], x[1]};
        y[axis] = t;
        return sign * eval_interpolant(s, y);
      };
      x[axis] = golden_max_1d(f, x[axis] - w, x[axis] + w);
    }
    w = std::max(w * 0.6, 1e-11);
  }
  e.x[0] = x[0];
  e.x[1] = x[1];
  e.value = eval_interpolant(s, x);
  return e;
}

}  // namespace

Extremum refined_max(const SpectralField& s) { return refined_extremum(s, +1.0); }
Extremum refined_min(const SpectralField& s) { return refined_extremum(s, -1.0); }

double refined_linf(const SpectralField& s) {
  return std::max(std::abs(refined_max(s).value), std::abs(refined_min(s).value));
}

double hs_seminorm(const SpectralField& s, double order) {
  const TorusGrid& g = s.grid;
  double acc = 0.0;
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i) {
      const double k2 = double(g.wavenumber(i)) * double(g.wavenumber(i));
      if (k2 != 0.0) acc += std::pow(k2, order) * std::norm(s.c[i]);
    }
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2) {
        const double k1 = double(g.wavenumber(i1)), k2 = double(g.wavenumber(i2));
        const double kk = k1 * k1 + k2 * k2;
        if (kk != 0.0) acc += std::pow(kk, order) * std::norm(s.c[i1 * g.n + i2]);
      }
  }
  return std::sqrt(g.volume() * acc);
}

namespace {

// Spectral truncation onto a coarser grid (exact for band-limited data).
Field truncate_to(const Field& f, std::size_t ncap) {
  const SpectralField s = transform(f);
  const TorusGrid coarse(f.grid.d, ncap);
  SpectralField t(coarse);
  const long half = long(ncap) / 2;
  const std::size_t n = f.grid.n;
  if (f.grid.d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const long k = f.grid.wavenumber(i);
      if (k >= -half && k < half) t.c[std::size_t((k + long(ncap)) % long(ncap))] = s.c[i];
    }
  } else {
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        const long k1 = f.grid.wavenumber(i1), k2 = f.grid.wavenumber(i2);
        if (k1 >= -half && k1 < half && k2 >= -half && k2 < half)
          t.c[std::size_t((k1 + long(ncap)) % long(ncap)) * ncap +
              std::size_t((k2 + long(ncap)) % long(ncap))] = s.c[i1 * n + i2];
      }
  }
  return inverse_transform(t);
}

inline double wrap_delta(double d) {
  while (d > kPi) d -= kTwoPi;
  while (d <= -kPi) d += kTwoPi;
  return d;
}

}  // namespace

double gagliardo_pth_power(const Field& f_in, double s, double p) {
  if (s <= 0.0 || s >= 1.0 || p < 1.0)
    throw std::invalid_argument("gagliardo_pth_power: need 0 < s < 1, p >= 1");
  const std::size_t cap = f_in.grid.d == 1 ? 512 : 64;
  const Field f = f_in.grid.n > cap ? truncate_to(f_in, cap) : f_in;
  const TorusGrid& g = f.grid;
  const std::size_t n = g.n;
  const double hd = g.cell_volume();
  const double kexp = double(g.d) + s * p;

  // The torus distance depends only on the index offset, so the kernel is
  // tabulated once per offset; ordered pairs are enumerated by offset.
  const int pcase = p == 1.0 ? 1 : (p == 2.0 ? 2 : 0);
  const auto num = [&](double d) {
    return pcase == 1 ? std::abs(d) : (pcase == 2 ? d * d : std::pow(std::abs(d), p));
  };
  double acc = 0.0;
  if (g.d == 1) {
    for (std::size_t off = 1; off < n; ++off) {
      const double dist = std::abs(wrap_delta(double(off) * g.h()));
      const double ker = std::pow(dist, -kexp);
      double row = 0.0;
      for (std::size_t i = 0; i < n; ++i) row += num(f.v[i] - f.v[(i + off) % n]);
      acc += ker * row;
    }
  } else {
    for (std::size_t o1 = 0; o1 < n; ++o1)
      for (std::size_t o2 = 0; o2 < n; ++o2) {
        if (o1 == 0 && o2 == 0) continue;
        const double d1 = wrap_delta(double(o1) * g.h());
        const double d2 = wrap_delta(double(o2) * g.h());
        const double ker = std::pow(d1 * d1 + d2 * d2, -kexp / 2.0);
        double row = 0.0;
        for (std::size_t i1 = 0; i1 < n; ++i1) {
          const std::size_t j1 = (i1 + o1) % n;
          const double* fi = f.v.data() + i1 * n;
          const double* fj = f.v.data() + j1 * n;
          for (std::size_t i2 = 0; i2 < n; ++i2) row += num(fi[i2] - fj[(i2 + o2) % n]);
        }
        acc += ker * row;
      }
  }
  acc *= hd * hd;

  // Diagonal cells: |f(x)-f(y)| <= (|grad f(x)| + (h/2)|D2 f(x)|) |x-y| over
  // the inscribed ball of radius h/2 around each node.
  const SpectralField sf = transform(f);
  std::vector<double> gradmag(g.size(), 0.0), hessmag(g.size(), 0.0);
  const auto grads = gradient(sf);
  if (g.d == 1) {
    const Field fx = inverse_transform(grads[0]);
    const Field fxx = inverse_transform(laplacian(sf));
    for (std::size_t i = 0; i < n; ++i) {
      gradmag[i] = std::abs(fx.v[i]);
      hessmag[i] = std::abs(fxx.v[i]);
    }
  } else {
    const Field fx = inverse_transform(grads[0]);
    const Field fy = inverse_transform(grads[1]);
    const Field fxx = inverse_transform(gradient(grads[0])[0]);
    const Field fxy = inverse_transform(gradient(grads[0])[1]);
    const Field fyy = inverse_transform(gradient(grads[1])[1]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      gradmag[i] = std::hypot(fx.v[i], fy.v[i]);
      hessmag[i] = std::sqrt(fxx.v[i] * fxx.v[i] + 2.0 * fxy.v[i] * fxy.v[i] + fyy.v[i] * fyy.v[i]);
    }
  }
  const double surf = g.d == 1 ? 2.0 : kTwoPi;
  const double rad = g.h() / 2.0;
  const double pw = p * (1.0 - s);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double bound = gradmag[i] + rad * hessmag[i];
    acc += hd * std::pow(bound, p) * surf * std::pow(rad, pw) / pw;
  }
  return acc;
}

}  // namespace fks
