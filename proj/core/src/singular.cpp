#include "fks/singular.hpp"

#include <cmath>
#include <stdexcept>

#include "fks/quadrature.hpp"

namespace fks {

double torus_kernel_1d(double beta, double y) {
  y = std::abs(y);
  if (y <= 0.0 || y >= kTwoPi) throw std::invalid_argument("torus_kernel_1d: need 0 < |y| < 2 pi");
  const double q = y / kTwoPi;
  return std::pow(kTwoPi, -beta) * (hurwitz_zeta(beta, q) + hurwitz_zeta(beta, 1.0 - q));
}

namespace {

// Fourier-space Ewald coefficient g^(m) = pi (|m|/2)^{beta-2}
// Gamma((2-beta)/2, |m|^2/(4 eta)) / Gamma(beta/2)  (d = 2).
double ewald_fourier_coeff(double beta, double mm, double eta) {
  if (mm == 0.0)
    return kPi * std::pow(eta, (beta - 2.0) / 2.0) * 2.0 / ((beta - 2.0) * std::tgamma(beta / 2.0));
  return kPi * std::pow(std::sqrt(mm) / 2.0, beta - 2.0) *
         upper_gamma((2.0 - beta) / 2.0, mm / (4.0 * eta)) / std::tgamma(beta / 2.0);
}

}  // namespace

double torus_kernel_2d(double beta, const double y[2], const SingularOptions& opt) {
  const double eta = opt.ewald_eta;
  const int K = opt.ewald_direct, M = opt.ewald_fourier;
  double direct = 0.0;
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) {
      const double z1 = y[0] + kTwoPi * k1, z2 = y[1] + kTwoPi * k2;
      const double r2 = z1 * z1 + z2 * z2;
      direct += std::pow(r2, -beta / 2.0) * gamma_q(beta / 2.0, eta * r2);
    }
  double fourier = ewald_fourier_coeff(beta, 0.0, eta);
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const double mm = double(m1 * m1 + m2 * m2);
      fourier += ewald_fourier_coeff(beta, mm, eta) * std::cos(m1 * y[0] + m2 * y[1]);
    }
  return direct + fourier / (kTwoPi * kTwoPi);
}

double torus_kernel_2d_lat0(double beta, const SingularOptions& opt) {
  const double eta = opt.ewald_eta;
  const int K = opt.ewald_direct, M = opt.ewald_fourier;
  // lim (|y|^{-beta} Q(beta/2, eta |y|^2) - |y|^{-beta}) = -eta^{beta/2}/Gamma(beta/2+1)
  double acc = -std::pow(eta, beta / 2.0) / std::tgamma(beta / 2.0 + 1.0);
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double r2 = kTwoPi * kTwoPi * double(k1 * k1 + k2 * k2);
      acc += std::pow(r2, -beta / 2.0) * gamma_q(beta / 2.0, eta * r2);
    }
  double fourier = ewald_fourier_coeff(beta, 0.0, eta);
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      fourier += ewald_fourier_coeff(beta, double(m1 * m1 + m2 * m2), eta);
    }
  return acc + fourier / (kTwoPi * kTwoPi);
}

double torus_kernel_2d_bruteforce(double beta, const double y[2], long K, double tol) {
  if (beta <= 2.0) throw std::invalid_argument("torus_kernel_2d_bruteforce: need beta > 2");
  const double R = kTwoPi * (double(K) + 0.5);
  // tail ~ (2 pi)^{-2} int_{|z|>R} |z|^{-beta} dz, with a relative O(1/K) defect
  const double tail = std::pow(R, 2.0 - beta) / (kTwoPi * (beta - 2.0));
  const double tail_err = 8.0 * tail / double(K);
  if (tail_err > tol)
    throw std::invalid_argument("torus_kernel_2d_bruteforce: lattice window too small for tolerance");
  double acc = 0.0;
  for (long k1 = -K; k1 <= K; ++k1)
    for (long k2 = -K; k2 <= K; ++k2) {
      const double z1 = y[0] + kTwoPi * double(k1), z2 = y[1] + kTwoPi * double(k2);
      acc += std::pow(z1 * z1 + z2 * z2, -beta / 2.0);
    }
  return acc + tail;
}

namespace {

// Sparse mode list of a (mostly empty) coefficient table.
struct SparseModes {
  struct Entry {
    long k1, k2;
    std::complex<double> c;
  };
  std::vector<Entry> entries;
  long kmax = 0;
};

SparseModes collect_modes(const SpectralField& u) {
  SparseModes sm;
  double cmax = 0.0;
  for (const auto& c : u.c) cmax = std::max(cmax, std::abs(c));
  const double cut = cmax * 1e-18;
  const TorusGrid& g = u.grid;
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i)
      if (std::abs(u.c[i]) > cut) {
        sm.entries.push_back({g.wavenumber(i), 0, u.c[i]});
        sm.kmax = std::max(sm.kmax, std::labs(g.wavenumber(i)));
      }
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2)
        if (std::abs(u.c[i1 * g.n + i2]) > cut) {
          const long k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
          sm.entries.push_back({k1, k2, u.c[i1 * g.n + i2]});
          sm.kmax = std::max({sm.kmax, std::labs(k1), std::labs(k2)});
        }
  }
  return sm;
}

double singular_1d(const SpectralField& u, double alpha, double x, const SingularOptions& opt) {
  const double beta = 1.0 + alpha;
  const double levy_c = levy_normalization_closed(1, alpha);
  const double d2 = eval_interpolant_deriv(u, &x, 2);
  const double d4 = eval_interpolant_deriv(u, &x, 4);
  const double y0 = opt.y0;
  // smooth remainder of the periodized kernel at 0: 2 (2 pi)^{-beta} zeta(beta)
  const double r0 = 2.0 * std::pow(kTwoPi, -beta) * std::riemann_zeta(beta);
  // int_0^{y0} (2u(x) - u(x-y) - u(x+y)) K(y) dy with the second difference
  // expanded as -(u'' y^2 + u'''' y^4/12 + ...)
  double result = -d2 * (std::pow(y0, 2.0 - alpha) / (2.0 - alpha) + r0 * y0 * y0 * y0 / 3.0) -
                  d4 * (std::pow(y0, 4.0 - alpha) / (12.0 * (4.0 - alpha)) +
                        r0 * std::pow(y0, 5.0) / 60.0);
  const double ux2 = 2.0 * eval_interpolant(u, &x);
  const GaussLegendre& gl = gauss_legendre(opt.gl_radial_1d);
  double a = y0;
  while (a < kPi) {
    const double b = std::min(2.0 * a, kPi);
    const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double y = mid + halfw * gl.x[q];
      const double xm = x - y, xp = x + y;
      const double sd = ux2 - eval_interpolant(u, &xm) - eval_interpolant(u, &xp);
      result += halfw * gl.w[q] * sd * torus_kernel_1d(beta, y);
    }
    a = b;
  }
  return levy_c * result;
}

}  // namespace

SingularEvaluator2D::SingularEvaluator2D(double alpha, const SingularOptions& opt)
    : alpha_(alpha),
      beta_(2.0 + alpha),
      levy_c_(levy_normalization_closed(2, alpha)),
      rho0_(opt.rho0),
      wlat0_(torus_kernel_2d_lat0(2.0 + alpha, opt)) {
  const GaussLegendre& glt = gauss_legendre(opt.gl_theta);
  const GaussLegendre& glr = gauss_legendre(opt.gl_rho);
  for (int oct = 0; oct < 8; ++oct) {
    const double t0 = kPi / 4.0 * oct;
    for (int tp = 0; tp < opt.theta_panels; ++tp) {
      const double ta = t0 + kPi / 4.0 * tp / opt.theta_panels;
      const double tb = t0 + kPi / 4.0 * (tp + 1) / opt.theta_panels;
      const double tmid = 0.5 * (ta + tb), thw = 0.5 * (tb - ta);
      for (std::size_t qt = 0; qt < glt.x.size(); ++qt) {
        const double theta = tmid + thw * glt.x[qt];
        const double wt = thw * glt.w[qt];
        const double ct = std::cos(theta), st = std::sin(theta);
        const double L = kPi / std::max(std::abs(ct), std::abs(st));
        double ra = rho0_;
        while (ra < L) {
          const double rb = std::min(2.0 * ra, L);
          const double rmid = 0.5 * (ra + rb), rhw = 0.5 * (rb - ra);
          for (std::size_t qr = 0; qr < glr.x.size(); ++qr) {
            const double rho = rmid + rhw * glr.x[qr];
            Node nd;
            nd.y1 = rho * ct;
            nd.y2 = rho * st;
            nd.w = wt * rhw * glr.w[qr] * rho;
            const double y[2] = {nd.y1, nd.y2};
            nd.kernel = torus_kernel_2d(beta_, y, opt);
            nodes_.push_back(nd);
          }
          ra = rb;
        }
      }
    }
  }
}

double SingularEvaluator2D::eval(const SpectralField& u, const double* x) const {
  if (u.grid.d != 2) throw std::invalid_argument("SingularEvaluator2D: field must be 2-d");
  // angular averages over the unit circle turn D^2/D^4 into Laplacians:
  // avg D^2u(y,y) = |y|^2 Lap u / 2, avg D^4u(y,..) = 3 |y|^4 Lap^2 u / 8
  const double uxx = eval_interpolant_deriv(u, x, 2, 0);
  const double uyy = eval_interpolant_deriv(u, x, 0, 2);
  const double lap = uxx + uyy;
  const double bilap = eval_interpolant_deriv(u, x, 4, 0) +
                       2.0 * eval_interpolant_deriv(u, x, 2, 2) +
                       eval_interpolant_deriv(u, x, 0, 4);
  double result =
      -kPi * lap * (std::pow(rho0_, 2.0 - alpha_) / (2.0 * (2.0 - alpha_)) +
                    wlat0_ * std::pow(rho0_, 4.0) / 8.0) -
      kPi / 32.0 * bilap * std::pow(rho0_, 4.0 - alpha_) / (4.0 - alpha_);

  // u(x - y) = Re sum_k (c_k e^{ik.x}) e^{-ik.y}; phases tabulated per axis
  const SparseModes sm = collect_modes(u);
  std::vector<std::complex<double>> dk(sm.entries.size());
  for (std::size_t e = 0; e < sm.entries.size(); ++e)
    dk[e] = sm.entries[e].c *
            std::polar(1.0, double(sm.entries[e].k1) * x[0] + double(sm.entries[e].k2) * x[1]);
  const long kmax = sm.kmax;
  std::vector<std::complex<double>> e1(2 * kmax + 1), e2(2 * kmax + 1);
  const double ux = eval_interpolant(u, x);
  for (const Node& nd : nodes_) {
    const std::complex<double> s1 = std::polar(1.0, -nd.y1), s2 = std::polar(1.0, -nd.y2);
    e1[std::size_t(kmax)] = e2[std::size_t(kmax)] = 1.0;
    for (long k = 1; k <= kmax; ++k) {
      e1[std::size_t(kmax + k)] = e1[std::size_t(kmax + k - 1)] * s1;
      e2[std::size_t(kmax + k)] = e2[std::size_t(kmax + k - 1)] * s2;
      e1[std::size_t(kmax - k)] = std::conj(e1[std::size_t(kmax + k)]);
      e2[std::size_t(kmax - k)] = std::conj(e2[std::size_t(kmax + k)]);
    }
    std::complex<double> acc = 0.0;
    for (std::size_t e = 0; e < sm.entries.size(); ++e)
      acc += dk[e] * e1[std::size_t(sm.entries[e].k1 + kmax)] *
             e2[std::size_t(sm.entries[e].k2 + kmax)];
    result += nd.w * (ux - acc.real()) * nd.kernel;
  }
  return levy_c_ * result;
}

double frac_laplacian_singular(const SpectralField& u, double alpha, const double* x,
                               const SingularOptions& opt) {
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("frac_laplacian_singular: alpha must be in (0,2)");
  if (u.grid.d == 1) return singular_1d(u, alpha, x[0], opt);
  return SingularEvaluator2D(alpha, opt).eval(u, x);
}

}  // namespace fks
