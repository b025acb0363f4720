// Acceptance gate: ten criteria, one verdict line each; the exit code is the
// number of failures. Tolerances and parameter points are fixed here and must
// not be loosened to make a failing build pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fks/constants.hpp"
#include "fks/defs.hpp"
#include "fks/dynamics.hpp"
#include "fks/grid.hpp"
#include "fks/io.hpp"
#include "fks/norms.hpp"
#include "fks/rng.hpp"
#include "fks/singular.hpp"
#include "fks/spectral.hpp"
#include "fks/verifier.hpp"

using namespace fks;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int g_failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Field one_plus_cos(const TorusGrid& g, double amp) {
  Field u(g);
  for (std::size_t j = 0; j < g.n; ++j) u.v[j] = 1.0 + amp * std::cos(g.node(j));
  return u;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= double(x.size());
  ym /= double(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  return sxy / sxx;
}

const Certificate* find_cert(const std::vector<Certificate>& certs, const char* id) {
  for (const auto& c : certs)
    if (c.claim_id == id) return &c;
  return nullptr;
}

// shared between criteria 5 and 10
const char* kThm1Config = R"({
  "model": {"alpha": 1.0, "chi": 1.0, "r": 0.6, "eps": 0.1},
  "grid": {"d": 1, "n": 256},
  "solver": {"t_end": 50.0, "dt": 0.001, "record_every": 50},
  "initial_data": {"kind": "perturbed_one", "amplitude": 1.0, "modes": 1}
})";
std::string g_thm1_csv, g_thm1_ndjson;
bool g_thm1_ok = false;

// 1. Spectral multiplier vs periodized singular integral on random fields.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Combo {
    int d;
    double alpha;
  };
  const Combo combos[] = {{1, 0.5}, {1, 1.0}, {1, 1.5}, {2, 1.0}};
  double worst = 0.0;
  int fields = 0;
  for (const Combo& cb : combos) {
    const std::size_t n = cb.d == 1 ? 64 : 32;
    const TorusGrid g(cb.d, n);
    Rng rng(1000 + cb.d * 100 + long(cb.alpha * 10.0));
    std::unique_ptr<SingularEvaluator2D> ev;
    if (cb.d == 2) ev = std::make_unique<SingularEvaluator2D>(cb.alpha);
    const int pts = cb.d == 1 ? 6 : 4;
    for (int f = 0; f < 20; ++f, ++fields) {
      const SpectralField u = random_trig_poly(g, long(n) / 4, 1.0, rng);
      const SpectralField lam = frac_laplacian(u, cb.alpha);
      double scale = linf_grid(inverse_transform(lam));
      if (scale <= 0.0) scale = 1.0;
      for (int j = 0; j < pts; ++j) {
        const double x[2] = {-kPi + kTwoPi * double(j) / pts + 0.37 * g.h(),
                             -kPi + kTwoPi * double((j * 7) % pts) / pts + 0.61 * g.h()};
        const double spec = eval_interpolant(lam, x);
        const double sing =
            cb.d == 1 ? frac_laplacian_singular(u, cb.alpha, x) : ev->eval(u, x);
        worst = std::max(worst, std::fabs(spec - sing) / scale);
      }
    }
  }
  const double el = seconds_since(t0);
  verdict(1, worst <= 1e-5 && el < 60.0,
          fmt("operator agreement: max relative deviation %.3g (cap 1e-5) over %d fields, "
              "%.1f s (cap 60)",
              worst, fields, el));
}

// 2. Normalization, sharp Poincare, and dichotomy constants.
void criterion2() {
  const double c11 = compute_C(1, 1.0);
  const double e_c = std::fabs(c11 - 1.0 / kPi);
  const bool p_ok = sharp_P11() == 1.0;
  const double e_m1 = std::fabs(sharp_M1_11() - 2.0 / kPi);
  const double e_m2 = std::fabs(sharp_M2_11() - 1.0 / (4.0 * kPi));
  verdict(2, e_c <= 1e-8 && p_ok && e_m1 <= 1e-12 && e_m2 <= 1e-12,
          fmt("C(1,1) off by %.2g (cap 1e-8); sharp P = 1 %s; M1/M2 off by %.2g/%.2g "
              "(cap 1e-12)",
              e_c, p_ok ? "exactly" : "VIOLATED", e_m1, e_m2));
}

// 3. Constant data against the logistic closed form.
void criterion3() {
  const TorusGrid g(1, 64);
  const double r = 0.05, chi = 0.1;  // any valid pair works; logistic only sees r
  double worst = 0.0;
  for (double c : {0.2, 1.0, 3.0}) {
    SolverConfig cfg;
    cfg.grid = g;
    cfg.params = ModelParams(1, 1.0, chi, r, 0.025);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.record_every = 1000;
    Field u0(g);
    for (double& v : u0.v) v = c;
    const RunResult rr = run(u0, cfg);
    if (rr.aborted) {
      verdict(3, false, "homogeneous run aborted: " + rr.abort_reason);
      return;
    }
    const double ref = logistic_exact(c, r, 1.0);
    for (double v : rr.final_state.v) worst = std::max(worst, std::fabs(v - ref));
  }
  verdict(3, worst <= 1e-6,
          fmt("logistic oracle: max node error %.3g at t = 1 (cap 1e-6)", worst));
}

// 4. Integrated mass envelope across the parameter split.
void criterion4() {
  double worst_rel = kInf;
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const bool super = (seed % 2) == 1;
    const ModelParams mp = super ? ModelParams(1, 1.0, 0.8 + 0.05 * double(seed), 0.6, 0.1)
                                 : ModelParams(1, 0.4, 1.0, 0.05 + 0.01 * double(seed), 0.02);
    SolverConfig cfg;
    cfg.grid = TorusGrid(1, 64);
    cfg.params = mp;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.record_every = 20;
    Rng rng(seed);
    const Field u0 = random_positive_field(cfg.grid, 4, 1.0, 0.5, rng);
    const RunResult rr = run(u0, cfg);
    if (rr.aborted) {
      verdict(4, false, fmt("seed %d aborted: ", int(seed)) + rr.abort_reason);
      return;
    }
    ++runs;
    for (const auto& rec : rr.records)
      worst_rel = std::min(worst_rel, (rec.env_l1 - rec.l1) / rec.env_l1);
  }
  verdict(4, worst_rel >= -1e-6,
          fmt("mass envelope over %d sub/supercritical runs: worst relative margin %.3g "
              "(floor -1e-6)",
              runs, worst_rel));
}

// 5. Uniform-bound certificate at the reference supercritical point.
void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig rc = parse_run_config(kThm1Config);
  const RunResult rr = run(build_initial_data(rc), to_solver_config(rc));
  const double el = seconds_since(t0);
  if (rr.aborted) {
    verdict(5, false, "run aborted: " + rr.abort_reason);
    return;
  }
  const auto certs = certify_trajectory(rr, to_solver_config(rc));
  const Certificate* linf = find_cert(certs, "THM1_LINF");
  const Certificate* lp = find_cert(certs, "LEMMA_LP");
  const bool cert_ok = linf && lp && linf->status == CertStatus::pass &&
                       lp->status == CertStatus::pass;
  double late_sup = 0.0;
  for (const auto& rec : rr.records)
    if (rec.t >= 0.9 * rr.final_t) late_sup = std::max(late_sup, rec.linf);
  const double ceiling = rr.constants.R_inf_tilde;
  const bool limsup_ok = late_sup <= ceiling + 1e-6;
  g_thm1_csv = trajectory_csv(rr);
  g_thm1_ndjson = certificates_ndjson(certs, rc.digest);
  g_thm1_ok = true;
  verdict(5, cert_ok && limsup_ok && el < 300.0,
          fmt("THM1_LINF %s, LEMMA_LP %s; final-10%% sup %.4g vs ceiling %.4g; %.1f s "
              "(cap 300)",
              linf ? to_string(linf->status) : "missing",
              lp ? to_string(lp->status) : "missing", late_sup, ceiling, el));
}

// 6. Oscillation decay at a positive-rate parameter point.
void criterion6() {
  const double chi = 0.02, r = chi - 1e-5;
  const double eps = default_eps(1, 1.0, chi, r);
  SolverConfig cfg;
  cfg.grid = TorusGrid(1, 128);
  cfg.params = ModelParams(1, 1.0, chi, r, eps);
  cfg.dt = 1e-3;
  cfg.t_end = 20.0;
  cfg.record_every = 20;
  const RunResult rr = run(one_plus_cos(cfg.grid, 0.3), cfg);
  if (rr.aborted) {
    verdict(6, false, "run aborted: " + rr.abort_reason);
    return;
  }
  const double gamma = rr.constants.gamma;
  const double osc0 = rr.records.front().osc;
  std::vector<double> ts, ys;
  for (const auto& rec : rr.records)
    if (rec.t >= 0.05 * rr.final_t && rec.osc > 1e-12 * osc0) {
      ts.push_back(rec.t);
      ys.push_back(std::log(rec.osc));
    }
  const double slope = ts.size() >= 2 ? lsq_slope(ts, ys) : kInf;
  const Certificate* thm2 = nullptr;
  const auto certs = certify_trajectory(rr, cfg);
  thm2 = find_cert(certs, "THM2_OSC_DECAY");
  verdict(6, gamma > 0.0 && slope <= -0.95 * gamma,
          fmt("gamma = %.6g > 0 at (d,alpha,chi,r,eps) = (1, 1, %.3g, %.5g, %.6g); "
              "fitted log-osc slope %.4g <= -0.95 gamma = %.4g; certificate %s",
              gamma, chi, r, eps, slope, -0.95 * gamma,
              thm2 ? to_string(thm2->status) : "missing"));
}

// 7. Sharp-regime convergence to the homogeneous state.
void criterion7() {
  SolverConfig cfg;
  cfg.grid = TorusGrid(1, 128);
  cfg.params = ModelParams(1, 1.0, 0.012, 0.006, default_eps(1, 1.0, 0.012, 0.006));
  cfg.dt = 0.0;  // adaptive default
  cfg.t_end = 5000.0;
  cfg.record_every = 100;
  const RunResult rr = run(one_plus_cos(cfg.grid, 0.3), cfg);
  if (rr.aborted) {
    verdict(7, false, "run aborted: " + rr.abort_reason);
    return;
  }
  const auto& last = rr.records.back();
  const double dist = std::max(last.min_u + last.osc - 1.0, 1.0 - last.min_u);
  const double delta = rr.constants.delta_thm2b;
  const double target = kTwoPi + delta;
  const double t_cross =
      bernoulli_crossing_time(rr.records.front().l1, cfg.params.r, 1, target);
  double worst_mass = kInf;
  for (const auto& rec : rr.records)
    if (rec.t >= t_cross) worst_mass = std::min(worst_mass, target - rec.l1);
  const auto certs = certify_trajectory(rr, cfg);
  const Certificate* c = find_cert(certs, "THM2B_CONVERGENCE");
  const bool cert_ok = c && c->status == CertStatus::pass;
  verdict(7, dist < 1e-3 && worst_mass >= -1e-6 * target && cert_ok,
          fmt("final |u-1|_inf = %.3g (cap 1e-3); mass clause margin %.3g past t = %.3g "
              "(delta = %.4g); certificate %s",
              dist, worst_mass, t_cross, delta, c ? to_string(c->status) : "missing"));
}

// 8. Static lemma suite on seeded positive fields, both dimensions.
void criterion8() {
  const auto c1 = certify_lemmas_static(1, 1.0, 1.0, 0.1, 100, 2024, 64);
  const auto c2 = certify_lemmas_static(2, 1.0, 1.0, 0.1, 100, 4048, 32);
  bool ok = true;
  std::string det;
  for (const auto* batch : {&c1, &c2})
    for (const auto& c : *batch) {
      ok = ok && c.status == CertStatus::pass;
      det += fmt("%s %s (margin %.3g, %d samples); ", c.claim_id.c_str(),
                 to_string(c.status), c.worst_margin, int(c.samples));
    }
  verdict(8, ok, det);
}

// 9. Refinement order and spectral grid agreement above order one.
void criterion9() {
  const ModelParams mp(1, 1.5, 1.0, 0.6, 0.1);
  const InitialData make = [](const TorusGrid& g) {
    Field u(g);
    for (std::size_t j = 0; j < g.n; ++j) u.v[j] = 1.0 + std::cos(g.node(j));
    return u;
  };
  const std::vector<double> dts = {4e-3, 2e-3, 1e-3};
  const auto config_at = [&](double dt, std::size_t n) {
    SolverConfig cfg;
    cfg.grid = TorusGrid(1, n);
    cfg.params = mp;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    cfg.record_every = std::size_t(std::lround(1.0 / dt));
    return cfg;
  };
  std::vector<double> dist;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    TwinResult tw = twin_run(make, config_at(dts[i], 128), config_at(dts[i + 1], 128));
    if (tw.a.aborted || tw.b.aborted) {
      verdict(9, false, "refinement run aborted");
      return;
    }
    dist.push_back(tw.distances.back());
  }
  TwinResult tg = twin_run(make, config_at(1e-3, 128), config_at(1e-3, 256));
  const double grid_dist = tg.distances.back();
  const Certificate cert = certify_twin(dts, dist, mp.alpha, grid_dist, 1e-8);
  const double order = std::log(dist[0] / dist[1]) / std::log(dts[0] / dts[1]);
  verdict(9, cert.status == CertStatus::pass,
          fmt("fitted order %.3g (floor 0.9); pair distances %.3g/%.3g; grid 128->256 "
              "distance %.3g (cap 1e-8); certificate %s",
              order, dist[0], dist[1], grid_dist, to_string(cert.status)));
}

// 10. Byte-level determinism of the reference certificate run.
void criterion10() {
  if (!g_thm1_ok) {
    verdict(10, false, "reference run unavailable (criterion 5 aborted)");
    return;
  }
  const RunConfig rc = parse_run_config(kThm1Config);
  const RunResult rr = run(build_initial_data(rc), to_solver_config(rc));
  if (rr.aborted) {
    verdict(10, false, "repeat run aborted: " + rr.abort_reason);
    return;
  }
  const auto certs = certify_trajectory(rr, to_solver_config(rc));
  const std::string csv = trajectory_csv(rr);
  const std::string nd = certificates_ndjson(certs, rc.digest);
  const bool csv_ok = csv == g_thm1_csv;
  const bool nd_ok = nd == g_thm1_ndjson;
  verdict(10, csv_ok && nd_ok,
          fmt("repeat run: CSV %s (%zu bytes), NDJSON %s (%zu bytes)",
              csv_ok ? "byte-identical" : "DIFFERS", csv.size(),
              nd_ok ? "byte-identical" : "DIFFERS", nd.size()));
}

}  // namespace

int main() {
  std::printf("acceptance suite: fractional chemotaxis solver and certificate engine\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0)
    std::printf("all 10 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
