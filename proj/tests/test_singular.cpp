#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fks/defs.hpp"
#include "fks/grid.hpp"
#include "fks/norms.hpp"
#include "fks/rng.hpp"
#include "fks/singular.hpp"
#include "fks/spectral.hpp"

using namespace fks;

namespace {

// Alternating Dirichlet sums with Euler averaging: zeta via eta, plus the
// L-function beta(s) = sum (-1)^k (2k+1)^{-s}; both independent of the library.
double euler_sum(const std::vector<double>& terms) {
  std::vector<double> partial;
  double acc = 0.0;
  for (double t : terms) {
    acc += t;
    partial.push_back(acc);
  }
  while (partial.size() > 1) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i)
      partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  return partial[0];
}

double zeta_ref(double s) {
  std::vector<double> terms;
  for (int k = 1; k <= 60; ++k) terms.push_back((k % 2 ? 1.0 : -1.0) * std::pow(double(k), -s));
  return euler_sum(terms) / (1.0 - std::pow(2.0, 1.0 - s));
}

double dirichlet_beta_ref(double s) {
  std::vector<double> terms;
  for (int k = 0; k <= 60; ++k) terms.push_back((k % 2 ? -1.0 : 1.0) * std::pow(2.0 * k + 1.0, -s));
  return euler_sum(terms);
}

}  // namespace

TEST_CASE("periodized 1-d kernel at exponent two has a closed form") {
  for (double y : {0.05, 0.3, 1.0, 2.5, 3.1}) {
    const double ref = 0.25 / std::pow(std::sin(y / 2.0), 2);
    CHECK(torus_kernel_1d(2.0, y) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("periodized 1-d kernel matches a long direct lattice sum") {
  const double beta = 2.5;
  for (double y : {0.4, 1.9, -2.7}) {
    double brute = 0.0;
    for (long long k = 1000000; k >= 1; --k)
      brute += std::pow(std::fabs(y + kTwoPi * double(k)), -beta) +
               std::pow(std::fabs(y - kTwoPi * double(k)), -beta);
    brute += std::pow(std::fabs(y), -beta);
    CHECK(torus_kernel_1d(beta, y) == doctest::Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("2-d Ewald kernel agrees with brute force and is eta-independent") {
  const double beta = 3.5;
  const double y[2] = {0.9, -1.7};
  const double brute = torus_kernel_2d_bruteforce(beta, y, 4000, 1e-9);
  CHECK(torus_kernel_2d(beta, y) == doctest::Approx(brute).epsilon(1e-6));
  SingularOptions opt;
  opt.ewald_eta = 0.11;
  CHECK(torus_kernel_2d(beta, y, opt) == doctest::Approx(torus_kernel_2d(beta, y)).epsilon(1e-11));
}

TEST_CASE("brute-force lattice window refuses impossible tolerances") {
  const double y[2] = {0.9, -1.7};
  CHECK_THROWS(torus_kernel_2d_bruteforce(3.5, y, 4, 1e-12));
}

TEST_CASE("2-d origin lattice sum reduces to an Epstein zeta value") {
  // sum_{k != 0} |2 pi k|^{-beta} = (2 pi)^{-beta} 4 zeta(beta/2) beta_L(beta/2)
  for (double beta : {3.0, 3.5}) {
    const double s = beta / 2.0;
    const double ref = std::pow(kTwoPi, -beta) * 4.0 * zeta_ref(s) * dirichlet_beta_ref(s);
    CHECK(torus_kernel_2d_lat0(beta) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("singular route reproduces the spectral operator off the grid") {
  TorusGrid g(1, 32);
  Rng rng(21);
  SpectralField uhat = transform(inverse_transform(random_trig_poly(g, 8, 1.0, rng)));
  for (double alpha : {0.5, 1.5}) {
    SpectralField lam = frac_laplacian(uhat, alpha);
    const double scale = linf_grid(inverse_transform(lam));
    for (double x : {-2.9, -0.41, 1.3}) {
      const double spec = eval_interpolant(lam, &x);
      const double sing = frac_laplacian_singular(uhat, alpha, &x);
      CHECK(std::fabs(spec - sing) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("2-d evaluator reproduces the spectral operator off the grid") {
  TorusGrid g(2, 16);
  Rng rng(22);
  SpectralField uhat = transform(inverse_transform(random_trig_poly(g, 4, 1.0, rng)));
  const double alpha = 1.0;
  SpectralField lam = frac_laplacian(uhat, alpha);
  const double scale = linf_grid(inverse_transform(lam));
  SingularEvaluator2D ev(alpha);
  const double pts[3][2] = {{0.37, -1.1}, {-2.2, 0.05}, {1.9, 2.6}};
  for (const auto& x : pts) {
    const double spec = eval_interpolant(lam, x);
    const double sing = ev.eval(uhat, x);
    CHECK(std::fabs(spec - sing) <= 1e-8 * scale);
  }
}

TEST_CASE("constants are annihilated by the singular operator") {
  TorusGrid g(1, 64);
  Field u(g);
  for (auto& v : u.v) v = 5.0;
  SpectralField uhat = transform(u);
  for (double alpha : {0.5, 1.0, 1.5}) {
    for (double x : {0.0, 0.71, -3.0}) {
      CHECK(std::fabs(frac_laplacian_singular(uhat, alpha, &x)) < 1e-9);
    }
  }
}
