#pragma once

#include <cstddef>
#include <vector>

namespace fks {

// Gauss-Legendre rule on [-1, 1], nodes ascending. Computed by Newton on the
// Legendre recurrence and cached per order; deterministic.
struct GaussLegendre {
  std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int m);

// sum_{j>=0} (q + j)^{-s} for s > 1, q > 0, via Euler-Maclaurin with a
// 16-term head and Bernoulli corrections through B12 (abs err < 1e-14 here).
double hurwitz_zeta(double s, double q);

// Regularized incomplete gamma functions P(a,x) = gamma(a,x)/Gamma(a) and
// Q(a,x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0 (series / continued fraction).
double gamma_p(double a, double x);
double gamma_q(double a, double x);
// Unregularized upper Gamma(a, x) extended to a in (-1, 0) via one step of
// Gamma(a,x) = (Gamma(a+1,x) - x^a e^{-x}) / a.
double upper_gamma(double a, double x);

// int_A^inf cos(rho - pi/4) rho^{-s} drho and the sine analogue, by a 10-term
// integration-by-parts expansion. Truncation error is bounded by the first
// dropped term, (s)(s+1)...(s+9) A^{-s-10}: below 1e-16 for s in (1, 3] once
// A >= 40, but only ~1e-5 at A = 10. Callers needing full precision must pass
// A >= 40.
double cos_quarter_tail(double s, double A);
double sin_quarter_tail(double s, double A);

// int_A^inf J_0(rho) rho^{-s} drho via the Hankel asymptotic expansion of J_0
// (four P/Q terms) and the oscillatory tails above; requires A >= 40.
double bessel_j0_tail(double s, double A);

// Closed form of the Levy symbol normalization 2 (int_{R^d} 4 sin^2(x_1/2)
// |x|^{-d-alpha} dx)^{-1} = 2^{alpha-1} alpha Gamma((d+alpha)/2) /
// (pi^{d/2} Gamma(1-alpha/2)); used as an independent cross-check of the
// quadrature route and as the kernel constant of the singular-integral oracle.
double levy_normalization_closed(int d, double alpha);

}  // namespace fks
