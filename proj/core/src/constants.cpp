#include "fks/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fks/quadrature.hpp"
#include "fks/rng.hpp"

namespace fks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

ModelParams::ModelParams(int d_, double alpha_, double chi_, double r_, double eps_)
    : d(d_), alpha(alpha_), chi(chi_), r(r_), eps(eps_) {
  require(d == 1 || d == 2, "ModelParams: d must be 1 or 2");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "ModelParams: alpha must be in (0,2)");
  require(std::isfinite(chi) && std::isfinite(r) && chi > r && r > 0.0,
          "ModelParams: need chi > r > 0");
  require(std::isfinite(eps) && eps > 0.0 && eps < r, "ModelParams: eps must be in (0,r)");
}

bool supercritical_eps_exists(int d, double alpha, double chi, double r) {
  if (alpha >= double(d)) return true;
  return r - chi * (1.0 - alpha / d) > 0.0;
}

double default_eps(int d, double alpha, double chi, double r) {
  require(d == 1 || d == 2, "default_eps: d must be 1 or 2");
  require(alpha > 0.0 && alpha < 2.0 && chi > r && r > 0.0, "default_eps: invalid parameters");
  if (alpha >= double(d)) return r / 2.0;
  const double hi = r - chi * (1.0 - alpha / d);  // sigma > 0 iff eps < hi
  if (hi > 0.0) return hi / 2.0;
  return r / 2.0;  // no supercritical slack exists; plain midpoint fallback
}

// ---------------------------------------------------------------------------
// Normalization constant: 1-d integrand 2(2 - 2cos x) x^{-1-alpha} on (0,inf),
// 2-d reduces in polar coordinates to 4 pi (1 - J_0(rho)) rho^{-1-alpha}.
// Both are handled as: Taylor series on [0,1], Gauss-Legendre panels of one
// oscillation period up to A, analytic power tail minus oscillatory tail.
// ---------------------------------------------------------------------------

namespace {

double panels_value(double a, double b, int order, double alpha, bool two_d) {
  const GaussLegendre& gl = gauss_legendre(order);
  const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t q = 0; q < gl.x.size(); ++q) {
    const double x = mid + halfw * gl.x[q];
    const double osc = two_d ? (1.0 - std::cyl_bessel_j(0.0, x)) : (2.0 - 2.0 * std::cos(x));
    acc += halfw * gl.w[q] * osc * std::pow(x, -1.0 - alpha);
  }
  return acc;
}

double levy_base_integral(int d, double alpha) {
  const bool two_d = (d == 2);
  // [0,1] by the alternating Taylor series of the oscillatory factor
  double series = 0.0;
  double coef = 1.0;  // |series coefficient| of x^{2m}
  for (int m = 1; m <= 40; ++m) {
    if (two_d)
      coef /= 4.0 * double(m) * double(m);
    else
      coef /= double(2 * m - 1) * double(2 * m);
    const double term = coef / (2.0 * m - alpha);
    series += (m % 2 == 1) ? term : -term;
    if (coef < 1e-22) break;
  }
  if (!two_d) series *= 2.0;  // 2 - 2cos x = sum 2 (-1)^{m+1} x^{2m} / (2m)!

  // period-length panels on [1, A]
  const int n_panels = two_d ? 13 : 32;
  double body = 0.0, body_check = 0.0;
  double a = 1.0;
  for (int j = 0; j < n_panels; ++j) {
    const double b = a + kTwoPi;
    body += panels_value(a, b, 32, alpha, two_d);
    body_check += panels_value(a, b, 24, alpha, two_d);
    a = b;
  }
  if (std::abs(body - body_check) > 1e-12 * (1.0 + std::abs(body)))
    throw std::runtime_error("compute_C: quadrature tolerance not met");
  const double A = a;

  // tail: power part exactly, oscillatory part by asymptotic expansion
  const double s = 1.0 + alpha;
  double tail;
  if (two_d) {
    tail = std::pow(A, -alpha) / alpha - bessel_j0_tail(s, A);
  } else {
    const double cos_tail = (cos_quarter_tail(s, A) - sin_quarter_tail(s, A)) / std::sqrt(2.0);
    tail = 2.0 * (std::pow(A, -alpha) / alpha - cos_tail);
  }
  // d = 1: integrand even, two half-lines; d = 2: angular integral 4pi(1 - J0)
  const double scale = two_d ? 4.0 * kPi : 2.0;
  return scale * (series + body + tail);
}

}  // namespace

double compute_C(int d, double alpha) {
  require(d == 1 || d == 2, "compute_C: d must be 1 or 2");
  require(alpha > 0.0 && alpha < 2.0, "compute_C: alpha must be in (0,2)");
  return 2.0 / levy_base_integral(d, alpha);
}

double compute_C_montecarlo(int d, double alpha, std::uint64_t samples, std::uint64_t seed,
                            double* standard_error) {
  require(d == 1 || d == 2, "compute_C_montecarlo: d must be 1 or 2");
  require(alpha > 0.0 && alpha < 2.0, "compute_C_montecarlo: alpha must be in (0,2)");
  Rng rng(seed);
  const std::uint64_t half = samples / 2;
  // Stratified importance sampling of the base integral: radial density
  // (2-alpha) rho^{1-alpha} on [0,1], alpha rho^{-1-alpha} on [1,inf).
  double sum[2] = {0.0, 0.0}, sumsq[2] = {0.0, 0.0};
  for (int stratum = 0; stratum < 2; ++stratum) {
    for (std::uint64_t i = 0; i < half; ++i) {
      const double u = std::max(rng.uniform(), 1e-300);
      double rho, dens;
      if (stratum == 0) {
        rho = std::pow(u, 1.0 / (2.0 - alpha));
        dens = (2.0 - alpha) * std::pow(rho, 1.0 - alpha);
      } else {
        rho = std::pow(u, -1.0 / alpha);
        dens = alpha * std::pow(rho, -1.0 - alpha);
      }
      double f;
      if (d == 1) {
        f = 2.0 * (2.0 - 2.0 * std::cos(rho)) * std::pow(rho, -1.0 - alpha);
      } else {
        const double theta = rng.uniform(0.0, kTwoPi);
        const double sn = std::sin(rho * std::cos(theta) / 2.0);
        f = kTwoPi * 4.0 * sn * sn * std::pow(rho, -1.0 - alpha);
      }
      const double est = f / dens;
      sum[stratum] += est;
      sumsq[stratum] += est * est;
    }
  }
  double integral = 0.0, var = 0.0;
  for (int stratum = 0; stratum < 2; ++stratum) {
    const double m = sum[stratum] / double(half);
    integral += m;
    var += (sumsq[stratum] / double(half) - m * m) / double(half - 1);
  }
  const double c = 2.0 / integral;
  if (standard_error) *standard_error = 2.0 * std::sqrt(var) / (integral * integral);
  return c;
}

double compute_P(int d, double alpha) {
  return 2.0 * compute_C(d, alpha) / (std::pow(kTwoPi, alpha) * std::pow(double(d), (d + alpha) / 2.0));
}

double sharp_P11() { return 1.0; }

double compute_M1(int d, double p) {
  require(p >= 1.0, "compute_M1: p must be >= 1");
  const double gamma_d = std::tgamma(d / 2.0 + 1.0);  // int_0^inf z^{d/2} e^{-z} dz
  return std::pow(std::pow(kPi, d / 2.0) * gamma_d / std::pow(2.0, 1.0 + p), 1.0 / p);
}

double compute_M2(int d, double p, double alpha) {
  require(p >= 1.0, "compute_M2: p must be >= 1");
  const double gamma_d = std::tgamma(d / 2.0 + 1.0);
  const double c = compute_C(d, alpha);
  return c * std::pow(std::pow(kPi, d / 2.0) / gamma_d, 1.0 + alpha / d) /
         (4.0 * std::pow(2.0, (p + 1.0) * alpha / d));
}

double sharp_M1_11() { return 2.0 / kPi; }
double sharp_M2_11() { return 1.0 / (4.0 * kPi); }

double entropy_S(int d, double alpha, double s, double delta) {
  require(d == 1 || d == 2, "entropy_S: d must be 1 or 2");
  require(s >= 0.0, "entropy_S: s must be >= 0");
  require(delta > 0.0 && delta < alpha / (2.0 + 2.0 * s), "entropy_S: delta out of range");
  const double e = 2.0 * (1.0 + s) * delta;  // kernel exponent defect
  double sup_integral;
  if (d == 1) {
    sup_integral = 2.0 * std::pow(kPi, e) / e;
  } else {
    // 8/e int_0^{pi/4} (pi / cos theta)^e dtheta by Gauss-Legendre
    const GaussLegendre& gl = gauss_legendre(32);
    const double mid = kPi / 8.0, halfw = kPi / 8.0;
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double theta = mid + halfw * gl.x[q];
      acc += halfw * gl.w[q] * std::pow(kPi / std::cos(theta), e);
    }
    sup_integral = 8.0 * acc / e;
  }
  const double c = compute_C(d, alpha);
  if (s == 0.0) return 2.0 / c * sup_integral;
  return std::pow(2.0, 2.0 * s + 1.0) / (c * s) * sup_integral;
}

double thm2b_threshold() { return 1.0 / (8.0 * kPi * kPi); }

double thm2b_delta(double chi) {
  require(chi > 0.0 && chi < thm2b_threshold(), "thm2b_delta: chi must be below 1/(8 pi^2)");
  return std::min(1.0, 1.0 / (4.0 * kPi * chi) - kTwoPi);
}

double bernoulli_envelope(double m0, double r, int d, double t) {
  const double vol = std::pow(kTwoPi, d);
  const double decay = std::exp(-r * t);
  return m0 / (decay + (1.0 - decay) * m0 / vol);
}

double bernoulli_crossing_time(double m0, double r, int d, double target) {
  if (m0 <= target) return 0.0;
  const double vol = std::pow(kTwoPi, d);
  if (target <= vol) return std::numeric_limits<double>::infinity();
  return -std::log(m0 * (vol - target) / (target * (vol - m0))) / r;
}

PaperConstants compute_constants(const ModelParams& params, const UZeroNorms& u0) {
  PaperConstants pc;
  pc.params = params;
  pc.u0 = u0;
  const int d = params.d;
  const double alpha = params.alpha, chi = params.chi, r = params.r, eps = params.eps;
  const double vol = std::pow(kTwoPi, d);
  const bool sharp = (d == 1 && alpha == 1.0);

  pc.C = compute_C(d, alpha);
  pc.P_general = 2.0 * pc.C / (std::pow(kTwoPi, alpha) * std::pow(double(d), (d + alpha) / 2.0));
  pc.P_sharp = sharp ? sharp_P11() : kNaN;
  pc.P_used = sharp ? sharp_P11() : pc.P_general;

  pc.p = params.p();
  pc.s = params.s();
  pc.sigma = params.sigma();
  pc.sigma_exceeds_one = pc.sigma > 1.0;
  pc.e_exp = params.exp_e();
  pc.t0 = std::log(2.0) / r;

  pc.M1 = compute_M1(d, pc.p);
  pc.M2 = compute_M2(d, pc.p, alpha);
  pc.M1_sharp = sharp ? sharp_M1_11() : kNaN;
  pc.M2_sharp = sharp ? sharp_M2_11() : kNaN;

  pc.A = r / pc.P_used * std::pow(r / eps * chi / (2.0 * chi - r + eps), pc.p);
  pc.R1 = std::max(u0.l1, vol);
  pc.R0 = std::pow(pc.A + std::max(u0.l1 * u0.l1 / vol, vol), pc.e_exp);
  pc.R2 = std::pow(pc.A + pc.R1 * pc.R1 / vol + pc.R1, pc.e_exp);
  pc.R2_tilde = std::pow(pc.A + 3.0 * vol, pc.e_exp);

  const double ap = alpha / d * pc.p;
  pc.K = pc.M2 / std::pow(std::max(u0.lp, pc.R0), ap);
  pc.K_tilde = pc.M2 / std::pow(pc.R2_tilde, ap);

  const double dissipation = vol * pc.C / std::pow(kTwoPi * std::sqrt(double(d)), d + alpha);
  if (pc.sigma != 0.0) {
    pc.F = pc.M1 + std::pow(4.0 * chi / pc.M2, 0.5 + 1.0 / pc.sigma) + 1.0;
    pc.R3_bar = 2.0 * u0.linf + 2.0 * std::pow(std::max(u0.lp, pc.R0), 3.0 / pc.sigma) * pc.F;
    pc.R_inf_tilde = 2.0 * std::pow(pc.R2_tilde, 3.0 / pc.sigma) * pc.F;
    pc.ssc1_lhs = 2.0 * chi - r + 2.0 * (chi - r) * (pc.R3_bar - 1.0) - dissipation;
    pc.gamma = -pc.ssc1_lhs;
    pc.gamma_cor = -(2.0 * chi - r + 2.0 * (chi - r) * (pc.R_inf_tilde - 1.0) - dissipation);
  } else {
    pc.F = pc.R3_bar = pc.R_inf_tilde = pc.ssc1_lhs = pc.gamma = pc.gamma_cor = kNaN;
  }

  pc.delta_used = alpha / (2.0 * (2.0 + 2.0 * pc.s));
  pc.S_entropy = entropy_S(d, alpha, pc.s, pc.delta_used);

  pc.thm2b_thresh = thm2b_threshold();
  pc.delta_thm2b =
      (sharp && r < chi && chi < pc.thm2b_thresh) ? thm2b_delta(chi) : kNaN;
  return pc;
}

// ---------------------------------------------------------------------------
// Envelopes
// ---------------------------------------------------------------------------

double BoundEnvelope::eval(double t) const {
  const auto elapsed = [&]() {
    const double tau = t - t_start;
    if (tau < -1e-12)
      throw std::domain_error("BoundEnvelope: restart envelope evaluated before its start time");
    return std::max(tau, 0.0);
  };
  switch (kind) {
    case EnvelopeKind::L1_bernoulli:
      return bernoulli_envelope(init_norm, r, d, t);
    case EnvelopeKind::Lp_Q0: {
      const double decay = std::exp(-rate * t);
      return init_norm * decay + (1.0 - decay) * amplitude;
    }
    case EnvelopeKind::Lp_Q2tilde: {
      const double decay = std::exp(-rate * elapsed());
      return init_norm * decay + (1.0 - decay) * amplitude;
    }
    case EnvelopeKind::Linf_R3: {
      const double decay = std::exp(-rate * t);
      const double q = init_norm * decay + (1.0 - decay) * amplitude;
      return 2.0 * std::exp(-t) * linf_init + 2.0 * std::pow(q, 3.0 / sigma) * F;
    }
    case EnvelopeKind::Linf_R3tilde: {
      const double tau = elapsed();
      const double decay = std::exp(-rate * tau);
      const double q = init_norm * decay + (1.0 - decay) * amplitude;
      return 2.0 * std::exp(-tau) * linf_init + 2.0 * std::pow(q, 3.0 / sigma) * F;
    }
    case EnvelopeKind::Linf_Rinf:
      return 2.0 * std::pow(amplitude, 3.0 / sigma) * F;
    case EnvelopeKind::osc_decay:
      return init_norm * std::exp(-rate * elapsed());
  }
  return kNaN;
}

BoundEnvelope make_l1_envelope(const ModelParams& params, double u0_l1) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::L1_bernoulli;
  e.d = params.d;
  e.r = params.r;
  e.init_norm = u0_l1;
  return e;
}

BoundEnvelope make_lp_q0_envelope(const PaperConstants& pc) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::Lp_Q0;
  e.rate = pc.P_used;
  e.init_norm = pc.u0.lp;
  e.amplitude = pc.R0;
  return e;
}

BoundEnvelope make_lp_q2tilde_envelope(const PaperConstants& pc, double lp_restart,
                                       double t_restart) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::Lp_Q2tilde;
  e.rate = pc.P_used;
  e.init_norm = lp_restart;
  e.amplitude = pc.R2_tilde;
  e.t_start = t_restart;
  return e;
}

BoundEnvelope make_linf_r3_envelope(const PaperConstants& pc) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::Linf_R3;
  e.rate = pc.P_used;
  e.init_norm = pc.u0.lp;
  e.amplitude = pc.R0;
  e.linf_init = pc.u0.linf;
  e.F = pc.F;
  e.sigma = pc.sigma;
  return e;
}

BoundEnvelope make_linf_r3tilde_envelope(const PaperConstants& pc, double linf_restart,
                                         double lp_restart, double t_restart) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::Linf_R3tilde;
  e.rate = pc.P_used;
  e.init_norm = lp_restart;
  e.amplitude = pc.R2_tilde;
  e.linf_init = linf_restart;
  e.F = pc.F;
  e.sigma = pc.sigma;
  e.t_start = t_restart;
  return e;
}

BoundEnvelope make_linf_rinf_envelope(const PaperConstants& pc) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::Linf_Rinf;
  e.amplitude = pc.R2_tilde;
  e.F = pc.F;
  e.sigma = pc.sigma;
  return e;
}

BoundEnvelope make_osc_envelope(double gamma, double osc_init, double t_start) {
  BoundEnvelope e;
  e.kind = EnvelopeKind::osc_decay;
  e.rate = gamma;
  e.init_norm = osc_init;
  e.t_start = t_start;
  return e;
}

}  // namespace fks
