#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "fks/defs.hpp"
#include "fks/grid.hpp"
#include "fks/norms.hpp"
#include "fks/quadrature.hpp"
#include "fks/rng.hpp"
#include "fks/spectral.hpp"

using namespace fks;

namespace {

Field sampled1(const TorusGrid& g, double (*f)(double)) {
  Field u(g);
  for (std::size_t j = 0; j < g.n; ++j) u.v[j] = f(g.node(j));
  return u;
}

// int_0^1 (1 - cos(c z)) z^{-1-2s} dz by the alternating Taylor series.
double near_origin_series(double c, double s) {
  double acc = 0.0, fact = 1.0;
  for (int m = 1; m <= 30; ++m) {
    fact *= (2.0 * m - 1.0) * (2.0 * m);
    const double term = std::pow(c, 2 * m) / (fact * (2.0 * m - 2.0 * s));
    acc += (m % 2 == 1) ? term : -term;
    if (std::fabs(term) < 1e-18) break;
  }
  return acc;
}

double gl_int(const std::function<double(double)>& f, double a, double b) {
  const GaussLegendre& gl = gauss_legendre(32);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
  return half * acc;
}

}  // namespace

TEST_CASE("grid quadrature norms hit closed trigonometric values") {
  TorusGrid g(1, 256);
  Field one = sampled1(g, [](double) { return 1.0; });
  CHECK(l1_norm(one) == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(l2_norm(one) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));

  Field c = sampled1(g, [](double x) { return std::cos(x); });
  // |cos| has kinks, so the trapezoidal value converges only at O(h^2).
  CHECK(l1_norm(c) == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(l2_norm(c) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(lp_norm(c, 4.0) == doctest::Approx(std::pow(0.75 * kPi, 0.25)).epsilon(1e-13));
  CHECK(lp_norm(c, 1.0) == doctest::Approx(l1_norm(c)).epsilon(1e-14));
  CHECK(linf_grid(c) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean(c) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  Field shifted = sampled1(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  CHECK(mean(shifted) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_grid(shifted) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(min_grid(shifted) == doctest::Approx(0.5).epsilon(1e-14));

  TorusGrid g2(2, 64);
  Field one2(g2);
  for (auto& v : one2.v) v = 1.0;
  CHECK(l1_norm(one2) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));
}

TEST_CASE("homogeneous seminorm weights modes by |k|^2s") {
  TorusGrid g(1, 64);
  SpectralField s1 = transform(sampled1(g, [](double x) { return std::cos(x); }));
  CHECK(hs_seminorm(s1, 0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  SpectralField s2 = transform(sampled1(g, [](double x) { return std::cos(2.0 * x); }));
  for (double ord : {0.25, 0.5, 1.0}) {
    CHECK(hs_seminorm(s2, ord) == doctest::Approx(std::sqrt(kPi) * std::pow(2.0, ord)).epsilon(1e-13));
  }
  // constants carry no seminorm
  Field flat(g);
  for (auto& v : flat.v) v = 3.7;
  CHECK(hs_seminorm(transform(flat), 0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("refined extrema polish off-node extremizers") {
  TorusGrid g(1, 32);
  Field u(g);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double x = g.node(j);
    u.v[j] = std::cos(x - 0.3) + 0.5 * std::cos(2.0 * (x - 0.3));
  }
  SpectralField s = transform(u);
  Extremum mx = refined_max(s);
  CHECK(mx.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(std::fabs(std::remainder(mx.x[0] - 0.3, kTwoPi)) < 1e-6);
  CHECK(mx.value >= max_grid(u) - 1e-12);

  // interior minimum of cos y + 0.5 cos 2y sits at y = 2pi/3 with value -3/4
  Extremum mn = refined_min(s);
  CHECK(mn.value == doctest::Approx(-0.75).epsilon(1e-9));
  CHECK(mn.value <= min_grid(u) + 1e-12);

  TorusGrid g2(2, 32);
  Field w(g2);
  for (std::size_t i = 0; i < g2.n; ++i)
    for (std::size_t j = 0; j < g2.n; ++j)
      w.v[i * g2.n + j] = std::cos(g2.node(i) - 0.2) * std::cos(g2.node(j) + 0.4);
  Extremum mx2 = refined_max(transform(w));
  CHECK(mx2.value == doctest::Approx(1.0).epsilon(1e-9));

  Field neg(g);
  for (std::size_t j = 0; j < g.n; ++j) neg.v[j] = -2.0 + std::cos(g.node(j));
  CHECK(refined_linf(transform(neg)) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("oscillation of a shifted cosine is its peak-to-peak range") {
  TorusGrid g(1, 64);
  Field u = sampled1(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  SpectralField s = transform(u);
  CHECK(refined_max(s).value - refined_min(s).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Gagliardo double sum obeys homogeneity and translation invariance") {
  TorusGrid g(1, 128);
  Rng rng(13);
  Field u = inverse_transform(random_trig_poly(g, 6, 1.0, rng));
  const double s = 0.3, p = 2.0;
  const double base = gagliardo_pth_power(u, s, p);
  REQUIRE(base > 0.0);
  Field scaled(g);
  for (std::size_t j = 0; j < g.n; ++j) scaled.v[j] = 3.0 * u.v[j];
  CHECK(gagliardo_pth_power(scaled, s, p) == doctest::Approx(std::pow(3.0, p) * base).epsilon(1e-12));
  Field moved(g);
  for (std::size_t j = 0; j < g.n; ++j) moved.v[j] = u.v[(j + 17) % g.n];
  CHECK(gagliardo_pth_power(moved, s, p) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("Gagliardo energy of a plain cosine matches the continuum integral") {
  // For u = cos x and p = 2 the double integral collapses to
  //   int_{-pi}^{pi} 2 pi (1 - cos z) |z|^{-1-2s} dz.
  const double s = 0.3;
  const double cont =
      4.0 * kPi * (near_origin_series(1.0, s) + gl_int([s](double z) {
                     return (1.0 - std::cos(z)) * std::pow(z, -1.0 - 2.0 * s);
                   },
                                                       1.0, kPi));
  TorusGrid g(1, 256);
  Field u = sampled1(g, [](double x) { return std::cos(x); });
  CHECK(gagliardo_pth_power(u, s, 2.0) == doctest::Approx(cont).epsilon(2e-2));
  // grid refinement shrinks the discrepancy
  TorusGrid gf(1, 512);
  Field uf(gf);
  for (std::size_t j = 0; j < gf.n; ++j) uf.v[j] = std::cos(gf.node(j));
  const double coarse = std::fabs(gagliardo_pth_power(u, s, 2.0) - cont);
  const double fine = std::fabs(gagliardo_pth_power(uf, s, 2.0) - cont);
  CHECK(fine <= coarse + 1e-12);
}

TEST_CASE("2-d Gagliardo energy of cos x1 matches the polar-quadrature oracle") {
  // inner x-average gives (2 pi)^2 (1 - cos z1); integrate over the square
  // fundamental domain in polar coordinates with the series near the origin.
  const double s = 0.3;
  auto radial = [s](double theta, double R) {
    const double c = std::cos(theta);
    double acc = near_origin_series(c, s);
    acc += gl_int([s, c](double r) { return (1.0 - std::cos(c * r)) * std::pow(r, -1.0 - 2.0 * s); },
                  1.0, R);
    return acc;
  };
  auto theta_int = [&](double a, double b, bool x_limited) {
    return gl_int([&](double th) {
      const double R = x_limited ? kPi / std::cos(th) : kPi / std::sin(th);
      return radial(th, R);
    },
                  a, b);
  };
  // (2 pi)^2 from the x-average, 4 from the z1 -> -z1, z2 -> -z2 symmetries;
  // the square corner regions beyond the inscribed disk carry the
  // theta-dependent radius.
  const double cont = 4.0 * kTwoPi * kTwoPi *
                      (theta_int(0.0, kPi / 4.0, true) + theta_int(kPi / 4.0, kPi / 2.0, false));
  TorusGrid g(2, 64);
  Field u(g);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) u.v[i * g.n + j] = std::cos(g.node(i));
  CHECK(gagliardo_pth_power(u, s, 2.0) == doctest::Approx(cont).epsilon(5e-2));
}
