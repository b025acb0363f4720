#pragma once

#include <cstdint>

#include "fks/defs.hpp"

namespace fks {

// Model parameters for the drift-diffusion system
//   du/dt = -Lambda^alpha u + chi div(u grad v) + r u (1 - u),  Dv - v = u
// on the torus [-pi, pi]^d, plus the slack eps in (0, r) entering the
// L^p machinery (p = chi / (chi - r + eps)).
struct ModelParams {
  int d = 1;
  double alpha = 1.0;
  double chi = 1.0;
  double r = 0.5;
  double eps = 0.25;

  ModelParams() = default;
  ModelParams(int d_, double alpha_, double chi_, double r_, double eps_);

  double p() const { return chi / (chi - r + eps); }
  double s() const { return (r - eps) / (chi - r + eps); }
  double sigma() const { return (alpha / d) * p() - 1.0; }
  double exp_e() const { return 1.0 - (r - eps) / chi; }
  // dissipation regime of the uniform L^inf bound (slack-free form)
  bool supercritical() const { return alpha > d * (1.0 - r / chi); }
  // same with the chosen eps; equivalent to sigma() > 0
  bool supercritical_with_eps() const { return alpha > d * (1.0 - (r - eps) / chi); }
};

// Midpoint of the admissible slack interval {eps in (0,r) : sigma > 0} when
// nonempty; plain midpoint r/2 otherwise (certificates needing sigma > 0 then
// report outside_hypotheses).
double default_eps(int d, double alpha, double chi, double r);
bool supercritical_eps_exists(int d, double alpha, double chi, double r);

struct UZeroNorms {
  double l1 = 0.0, lp = 0.0, linf = 0.0;
};

// Normalization of the Levy symbol, 2 (int_{R^d} 4 sin^2(x_1/2) |x|^{-d-alpha}
// dx)^{-1}, by deterministic quadrature (series near 0, dyadic Gauss-Legendre
// panels, analytic oscillatory tail); absolute error < 1e-10.
double compute_C(int d, double alpha);
// Independent Monte-Carlo estimate of the same constant (test oracle only).
double compute_C_montecarlo(int d, double alpha, std::uint64_t samples, std::uint64_t seed,
                            double* standard_error);

// Mean-free Poincare constant 2 C / ((2 pi)^alpha d^{(d+alpha)/2}); the sharp
// d = alpha = 1 value is exactly 1.
double compute_P(int d, double alpha);
double sharp_P11();

// Dichotomy constants (M1 depends on (d,p) only).
double compute_M1(int d, double p);
double compute_M2(int d, double p, double alpha);
double sharp_M1_11();  // 2/pi
double sharp_M2_11();  // 1/(4 pi)

// Entropy-inequality constant 2^{2s+1} / (C s) * sup_x int |x-y|^{-(d-2(1+s)
// delta)} dy for s > 0 (prefactor 2/C at s = 0); needs 0 < delta <
// alpha/(2+2s).
double entropy_S(int d, double alpha, double s, double delta);

double thm2b_threshold();          // 1/(8 pi^2)
double thm2b_delta(double chi);    // min{1, (4 pi chi)^{-1} - 2 pi}, chi below threshold

// Closed Bernoulli envelope m0 / (e^{-rt} + (2pi)^{-d} (1 - e^{-rt}) m0).
double bernoulli_envelope(double m0, double r, int d, double t);
// First time the envelope falls to `target` (0 if already below).
double bernoulli_crossing_time(double m0, double r, int d, double target);

// Every explicit constant of the bound machinery, evaluated once per
// (params, initial-norms) pair. Entries whose formula is void in the given
// regime (sharp values away from d = alpha = 1, sigma-dependent quantities at
// sigma = 0, ...) are NaN.
struct PaperConstants {
  ModelParams params;
  UZeroNorms u0;

  double C = 0.0;
  double P_general = 0.0;
  double P_sharp = 0.0;  // NaN unless d = alpha = 1
  double P_used = 0.0;   // sharp where available, general otherwise
  double M1 = 0.0, M2 = 0.0;              // at p = params.p()
  double M1_sharp = 0.0, M2_sharp = 0.0;  // NaN unless d = alpha = 1

  double p = 0.0, s = 0.0, sigma = 0.0, e_exp = 0.0;
  bool sigma_exceeds_one = false;  // uniform-bound proofs assume sigma in (0,1]
  double t0 = 0.0;                 // ln 2 / r

  double A = 0.0;  // (r / P_used) (r chi / (eps (2 chi - r + eps)))^p
  double R1 = 0.0, R0 = 0.0, R2 = 0.0, R2_tilde = 0.0;
  double K = 0.0, K_tilde = 0.0;  // M2 / Q_sup^{(alpha/d) p}

  double F = 0.0;            // M1 + (4 chi / M2)^{1/2 + 1/sigma} + 1
  double R3_bar = 0.0;       // 2 |u0|_inf + 2 max{|u0|_p, R0}^{3/sigma} F
  double R_inf_tilde = 0.0;  // 2 R2_tilde^{3/sigma} F
  double ssc1_lhs = 0.0;     // 2chi - r + 2(chi-r)(R3_bar - 1) - (2pi)^d C/(2pi sqrt d)^{d+alpha}
  double gamma = 0.0;        // -ssc1_lhs (decay rate when positive)
  double gamma_cor = 0.0;    // same with R_inf_tilde in place of R3_bar

  double S_entropy = 0.0;   // at s = params.s(), delta = delta_used
  double delta_used = 0.0;  // midpoint of (0, alpha/(2+2s))

  double thm2b_thresh = 0.0;
  double delta_thm2b = 0.0;  // NaN outside d = alpha = 1, r < chi < 1/(8 pi^2)
};

PaperConstants compute_constants(const ModelParams& params, const UZeroNorms& u0);

// Time-dependent bound envelopes assembled from PaperConstants.
enum class EnvelopeKind {
  L1_bernoulli,
  Lp_Q0,
  Lp_Q2tilde,
  Linf_R3,
  Linf_R3tilde,
  Linf_Rinf,
  osc_decay
};

struct BoundEnvelope {
  EnvelopeKind kind = EnvelopeKind::L1_bernoulli;
  int d = 1;
  double r = 0.0;          // Bernoulli rate
  double rate = 0.0;       // Poincare rate (Lp kinds) or decay rate (osc)
  double init_norm = 0.0;  // the norm the envelope starts from
  double amplitude = 0.0;  // R0 / R2_tilde limsup amplitude
  double F = 0.0;
  double sigma = 0.0;
  double linf_init = 0.0;  // L^inf part of the R3 kinds
  double t_start = 0.0;    // restart kinds measure elapsed time from here

  // Evaluate at absolute time t; throws std::domain_error when a restart
  // envelope is asked about t < t_start.
  double eval(double t) const;
};

BoundEnvelope make_l1_envelope(const ModelParams& params, double u0_l1);
BoundEnvelope make_lp_q0_envelope(const PaperConstants& pc);
BoundEnvelope make_lp_q2tilde_envelope(const PaperConstants& pc, double lp_restart,
                                       double t_restart);
BoundEnvelope make_linf_r3_envelope(const PaperConstants& pc);
BoundEnvelope make_linf_r3tilde_envelope(const PaperConstants& pc, double linf_restart,
                                         double lp_restart, double t_restart);
BoundEnvelope make_linf_rinf_envelope(const PaperConstants& pc);
BoundEnvelope make_osc_envelope(double gamma, double osc_init, double t_start);

}  // namespace fks
