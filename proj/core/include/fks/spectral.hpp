#pragma once

#include <vector>

#include "fks/grid.hpp"

namespace fks {

// Fourier multipliers on mean-normalized coefficients. |k| is the Euclidean
// norm of the integer wavevector.

// |k|^alpha c_k (the k = 0 coefficient maps to 0).
SpectralField frac_laplacian(const SpectralField& s, double alpha);

// -|k|^2 c_k.
SpectralField laplacian(const SpectralField& s);

// Component j: i k_j c_k. The unpaired Nyquist row (k_j = -n/2) is zeroed so
// odd-symbol output stays real-valued.
std::vector<SpectralField> gradient(const SpectralField& s);

// grad (Delta - 1)^{-1}: component j is i k_j / (-|k|^2 - 1) c_k; the zero
// mode maps to 0. Nyquist rows zeroed as in gradient.
std::vector<SpectralField> b_operator(const SpectralField& s);

// (Delta - 1)^{-1}: c_k / (-|k|^2 - 1); the zero mode maps to -c_0.
SpectralField elliptic_solve(const SpectralField& s);

// 2/3-rule dealiasing: zero every coefficient with |k_j| > n/3 on any axis.
void dealias_23(SpectralField& s);

}  // namespace fks
