#include "fks/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fks {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

SpectralField random_trig_poly(const TorusGrid& g, long max_mode, double amplitude, Rng& rng) {
  if (max_mode < 1 || std::size_t(max_mode) >= g.n / 2)
    throw std::invalid_argument("random_trig_poly: need 1 <= max_mode < n/2");
  SpectralField s(g);
  const long m = long(g.n);
  const auto put = [&](long k1, long k2) {
    // draw one complex coefficient for (k1,k2) and mirror it for realness
    const double kk = double(k1 * k1 + k2 * k2);
    const double scale = amplitude / (1.0 + kk);
    const std::complex<double> c(scale * rng.normal(), scale * rng.normal());
    const std::size_t i = g.d == 1
        ? std::size_t((k1 + m) % m)
        : std::size_t((k1 + m) % m) * g.n + std::size_t((k2 + m) % m);
    const std::size_t j = g.d == 1
        ? std::size_t((-k1 + m) % m)
        : std::size_t((-k1 + m) % m) * g.n + std::size_t((-k2 + m) % m);
    s.c[i] = c;
    s.c[j] = std::conj(c);
  };
  if (g.d == 1) {
    for (long k = 1; k <= max_mode; ++k) put(k, 0);
  } else {
    // half-space enumeration: k1 > 0, or k1 == 0 and k2 > 0
    for (long k1 = 1; k1 <= max_mode; ++k1)
      for (long k2 = -max_mode; k2 <= max_mode; ++k2) put(k1, k2);
    for (long k2 = 1; k2 <= max_mode; ++k2) put(0, k2);
  }
  return s;
}

Field random_positive_field(const TorusGrid& g, long max_mode, double amplitude, double shift,
                            Rng& rng) {
  if (shift <= 0.0) throw std::invalid_argument("random_positive_field: shift must be positive");
  const Field base = inverse_transform(random_trig_poly(g, max_mode, amplitude, rng));
  Field out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = base.v[i] * base.v[i] + shift;
  return out;
}

}  // namespace fks
