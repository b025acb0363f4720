#pragma once

#include "fks/grid.hpp"

namespace fks {

// Grid-quadrature Lebesgue norms: (h^d sum |f|^p)^{1/p}.
double lp_norm(const Field& f, double p);
double l1_norm(const Field& f);
double l2_norm(const Field& f);
double linf_grid(const Field& f);   // max |f| over nodes
double max_grid(const Field& f);
double min_grid(const Field& f);
double mean(const Field& f);

struct Extremum {
  double value = 0.0;
  double x[2] = {0.0, 0.0};
};

// Grid extrema refined through the trigonometric interpolant: the coefficient
// table is zero-padded 4x, the padded-grid argmax seeds a golden-section
// polish (coordinate descent in 2-d) to 1e-10 in position.
Extremum refined_max(const SpectralField& s);
Extremum refined_min(const SpectralField& s);
double refined_linf(const SpectralField& s);

// Homogeneous Sobolev seminorm via Parseval:
// ((2 pi)^d sum_{k != 0} |k|^{2s} |c_k|^2)^{1/2}.
double hs_seminorm(const SpectralField& s, double order);

// Gagliardo double integral int int |f(x)-f(y)|^p / dist(x,y)^{d+sp} dx dy
// (the p-th power of the W^{s,p} seminorm), 0 < s < 1. dist is the torus
// metric. Riemann double sum over node pairs; the diagonal cells use the
// local Taylor bound |f(x)-f(y)| <= (|grad f(x)| + (h/2)|D2 f(x)|) |x-y|
// integrated over a ball of radius h/2. Grids above 512 (1-d) or 64 per
// dimension (2-d) are spectrally truncated to that size first.
double gagliardo_pth_power(const Field& f, double s, double p);

}  // namespace fks
