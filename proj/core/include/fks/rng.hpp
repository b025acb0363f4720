#pragma once

#include <cstdint>
#include <random>

#include "fks/grid.hpp"

namespace fks {

// Deterministic random source. mt19937_64 output is pinned by the standard;
// the uniform and normal maps below avoid std::*_distribution, whose exact
// sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return double(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();  // Box-Muller, cached pair

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Real random trigonometric polynomial with modes 1 <= |k|_inf <= max_mode,
// coefficients ~ amplitude * N(0,1) / (1 + |k|^2), zero mean.
SpectralField random_trig_poly(const TorusGrid& g, long max_mode, double amplitude, Rng& rng);

// Strictly positive smooth field: (random trig polynomial)^2 + shift.
Field random_positive_field(const TorusGrid& g, long max_mode, double amplitude, double shift,
                            Rng& rng);

}  // namespace fks
