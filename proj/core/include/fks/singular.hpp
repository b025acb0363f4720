#pragma once

#include <vector>

#include "fks/grid.hpp"

namespace fks {

// Quadrature controls for the singular-integral route. Defaults give absolute
// errors well below 1e-8 for band-limited data with modes <= n/4.
struct SingularOptions {
  double y0 = 3e-3;        // 1-d: Taylor cell radius around the singularity
  double rho0 = 5e-3;      // 2-d: Taylor disk radius
  int gl_radial_1d = 32;   // Gauss-Legendre order per dyadic panel, 1-d
  int gl_theta = 12;       // 2-d angular order per panel
  int theta_panels = 2;    // angular panels per octant
  int gl_rho = 16;         // 2-d radial order per dyadic panel
  double ewald_eta = 0.05; // Ewald splitting parameter
  int ewald_direct = 4;    // direct-lattice window |k|_inf <= ewald_direct
  int ewald_fourier = 3;   // Fourier window |m|_inf <= ewald_fourier
};

// Direct evaluation of the fractional Laplacian at one point through the
// periodized singular integral
//   C_{d,alpha} int_{T^d} (u(x) - u(x-y)) W(y) dy,
//   W(y) = sum_{k in Z^d} |y + 2 pi k|^{-(d+alpha)},
// with the principal value taken in the symmetrized sense. The cell around
// y = 0 is integrated analytically from the Taylor expansion of the second
// difference (derivatives of the trigonometric interpolant); outside it,
// dyadic Gauss-Legendre panels. In 1-d the periodized kernel is a pair of
// Hurwitz zeta values; in 2-d it is assembled by Ewald splitting.
double frac_laplacian_singular(const SpectralField& u, double alpha, const double* x,
                               const SingularOptions& opt = {});

// 2-d evaluator with the quadrature geometry and Ewald kernel cached;
// construction costs ~0.3 s, evaluations reuse the kernel table.
class SingularEvaluator2D {
 public:
  explicit SingularEvaluator2D(double alpha, const SingularOptions& opt = {});
  double eval(const SpectralField& u, const double* x) const;

 private:
  double alpha_, beta_, levy_c_, rho0_, wlat0_;
  struct Node {
    double y1, y2, w, kernel;
  };
  std::vector<Node> nodes_;
};

// 1-d periodized kernel sum_{k in Z} |y + 2 pi k|^{-beta} (beta > 1, 0 < |y| < 2 pi).
double torus_kernel_1d(double beta, double y);

// 2-d lattice kernel W(y) by Ewald splitting; y in the open fundamental cell.
double torus_kernel_2d(double beta, const double y[2], const SingularOptions& opt = {});
// Smooth remainder W_lat(0) = lim_{y->0} (W(y) - |y|^{-beta}).
double torus_kernel_2d_lat0(double beta, const SingularOptions& opt = {});

// Brute-force reference: partial lattice sum over |k|_inf <= K plus the
// integral tail estimate. Throws if K is too small to certify tol.
double torus_kernel_2d_bruteforce(double beta, const double y[2], long K, double tol);

}  // namespace fks
