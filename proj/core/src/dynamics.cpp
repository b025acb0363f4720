#include "fks/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "fks/norms.hpp"
#include "fks/spectral.hpp"

namespace fks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// i k_j multiplier in place (Nyquist row on axis j zeroed: its pair is absent,
// so an odd symbol would break conjugate symmetry).
void derivative_in_place(SpectralField& s, int axis) {
  const TorusGrid& g = s.grid;
  const long nyq = -long(g.n / 2);
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i) {
      const long k = g.wavenumber(i);
      s.c[i] = (k == nyq) ? 0.0 : s.c[i] * std::complex<double>(0.0, double(k));
    }
    return;
  }
  for (std::size_t i1 = 0; i1 < g.n; ++i1) {
    const long k1 = g.wavenumber(i1);
    for (std::size_t i2 = 0; i2 < g.n; ++i2) {
      const long k2 = g.wavenumber(i2);
      const long k = axis == 0 ? k1 : k2;
      auto& c = s.c[i1 * g.n + i2];
      c = (k == nyq) ? 0.0 : c * std::complex<double>(0.0, double(k));
    }
  }
}

// chi div(u grad v) + r u (1 - u) in spectral form, v = (Delta - 1)^{-1} u.
// The quadratic products are dealiased; the linear r u term is not.
SpectralField nonlinear_term(const SpectralField& uhat, const Field& u, const ModelParams& mp,
                             bool dealias) {
  const TorusGrid& g = u.grid;
  SpectralField out(g);

  std::vector<SpectralField> w = b_operator(uhat);  // grad v
  for (int j = 0; j < g.d; ++j) {
    Field wj = inverse_transform(w[j]);
    for (std::size_t i = 0; i < wj.v.size(); ++i) wj.v[i] *= u.v[i];
    SpectralField flux = transform(wj);
    if (dealias) dealias_23(flux);
    derivative_in_place(flux, j);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += mp.chi * flux.c[i];
  }

  Field usq(g);
  for (std::size_t i = 0; i < u.v.size(); ++i) usq.v[i] = u.v[i] * u.v[i];
  SpectralField qhat = transform(usq);
  if (dealias) dealias_23(qhat);
  for (std::size_t i = 0; i < out.c.size(); ++i)
    out.c[i] += mp.r * (uhat.c[i] - qhat.c[i]);
  return out;
}

std::vector<double> levy_symbol(const TorusGrid& g, double alpha) {
  std::vector<double> sym(g.size(), 0.0);
  if (g.d == 1) {
    for (std::size_t i = 0; i < g.n; ++i)
      sym[i] = std::pow(std::abs(double(g.wavenumber(i))), alpha);
  } else {
    for (std::size_t i1 = 0; i1 < g.n; ++i1)
      for (std::size_t i2 = 0; i2 < g.n; ++i2) {
        const double k1 = double(g.wavenumber(i1)), k2 = double(g.wavenumber(i2));
        sym[i1 * g.n + i2] = std::pow(k1 * k1 + k2 * k2, alpha / 2.0);
      }
  }
  sym[0] = 0.0;
  return sym;
}

double auto_dt(const SpectralField& uhat, const SolverConfig& cfg) {
  std::vector<SpectralField> w = b_operator(uhat);
  double grad_max = 0.0;
  std::vector<Field> wp;
  wp.reserve(w.size());
  for (auto& comp : w) wp.push_back(inverse_transform(comp));
  for (std::size_t i = 0; i < wp[0].v.size(); ++i) {
    double m2 = 0.0;
    for (const auto& comp : wp) m2 += comp.v[i] * comp.v[i];
    grad_max = std::max(grad_max, m2);
  }
  grad_max = std::sqrt(grad_max);
  const double h = cfg.grid.h();
  return 0.5 * std::min(h / (cfg.params.chi * grad_max + 1.0), 0.1 / cfg.params.r);
}

}  // namespace

double logistic_exact(double c, double r, double t) {
  return c / (c + (1.0 - c) * std::exp(-r * t));
}

RunResult run(const Field& u0, const SolverConfig& cfg) {
  if (u0.grid != cfg.grid) throw std::invalid_argument("run: u0 grid differs from config grid");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");

  RunResult res;
  const TorusGrid& g = cfg.grid;
  const ModelParams& mp = cfg.params;

  SpectralField uhat = transform(u0);
  Field u = u0;

  UZeroNorms n0;
  n0.l1 = l1_norm(u0);
  n0.lp = lp_norm(u0, mp.p());
  n0.linf = refined_linf(uhat);
  res.constants = compute_constants(mp, n0);
  const PaperConstants& pc = res.constants;

  const BoundEnvelope env1 = make_l1_envelope(mp, n0.l1);
  const BoundEnvelope envp = make_lp_q0_envelope(pc);
  const BoundEnvelope envi = make_linf_r3_envelope(pc);

  const double dt = cfg.dt > 0.0 ? cfg.dt : auto_dt(uhat, cfg);
  const std::size_t n_steps = std::max<std::size_t>(1, std::size_t(std::ceil(cfg.t_end / dt - 1e-9)));
  res.dt_used = cfg.t_end / double(n_steps);
  res.neg_tol_used = cfg.neg_tol > 0.0 ? cfg.neg_tol : std::max(1e-10 * linf_grid(u0), 1e-300);

  const std::vector<double> sym = levy_symbol(g, mp.alpha);
  const std::size_t every = std::max<std::size_t>(1, cfg.record_every);

  bool neg_since_last = false;
  const auto record = [&](double t) {
    TrajectoryRecord rec;
    rec.t = t;
    rec.l1 = l1_norm(u);
    rec.lp = lp_norm(u, pc.p);
    rec.l2 = l2_norm(u);
    const Extremum mx = refined_max(uhat), mn = refined_min(uhat);
    rec.linf = std::max(std::abs(mx.value), std::abs(mn.value));
    rec.min_u = mn.value;
    rec.osc = mx.value - mn.value;
    rec.h_alpha2 = hs_seminorm(uhat, mp.alpha / 2.0);
    const SpectralField vhat = elliptic_solve(uhat);
    rec.v_min = refined_min(vhat).value;
    rec.v_max = refined_max(vhat).value;
    rec.env_l1 = env1.eval(t);
    rec.env_lp = envp.eval(t);
    rec.env_linf = (pc.sigma == pc.sigma) && pc.sigma != 0.0 ? envi.eval(t) : kNaN;
    const auto breach = [](double value, double env) {
      return env == env && value - env > std::abs(env) * 1e-6 + 1e-8;
    };
    rec.env_breach_l1 = breach(rec.l1, rec.env_l1);
    rec.env_breach_lp = breach(rec.lp, rec.env_lp);
    rec.env_breach_linf = breach(rec.linf, rec.env_linf);
    rec.neg_breach = neg_since_last || rec.min_u < -res.neg_tol_used;
    neg_since_last = false;
    res.records.push_back(rec);
    if (cfg.on_record) cfg.on_record(t, u);
  };

  record(0.0);

  SpectralField uhat_prev, nhat_prev;  // one-step history (SBDF2)
  for (std::size_t step = 1; step <= n_steps; ++step) {
    SpectralField nhat = nonlinear_term(uhat, u, mp, cfg.dealias);
    SpectralField next(g);
    const double h = res.dt_used;
    if (cfg.scheme == Scheme::IMEX1 || step == 1) {
      for (std::size_t i = 0; i < next.c.size(); ++i)
        next.c[i] = (uhat.c[i] + h * nhat.c[i]) / (1.0 + h * sym[i]);
    } else {
      for (std::size_t i = 0; i < next.c.size(); ++i)
        next.c[i] = (4.0 * uhat.c[i] - uhat_prev.c[i] +
                     2.0 * h * (2.0 * nhat.c[i] - nhat_prev.c[i])) /
                    (3.0 + 2.0 * h * sym[i]);
    }
    uhat_prev = std::move(uhat);
    nhat_prev = std::move(nhat);
    uhat = std::move(next);
    u = inverse_transform(uhat);

    // negativity and finiteness policing on the nodal values
    double gmin = u.v[0], gmax = u.v[0];
    for (double x : u.v) {
      gmin = std::min(gmin, x);
      gmax = std::max(gmax, x);
    }
    const double t = double(step) * res.dt_used;
    if (!std::isfinite(gmin) || !std::isfinite(gmax)) {
      res.aborted = true;
      char buf[128];
      std::snprintf(buf, sizeof buf, "solution lost finiteness at t = %.9g", t);
      res.abort_reason = buf;
      record(t);
      break;
    }
    if (gmin < -res.neg_tol_used) {
      neg_since_last = true;
      if (gmin < -1000.0 * res.neg_tol_used) {
        res.aborted = true;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "negativity breach: min u = %.9g at t = %.9g (abort threshold %.3g)", gmin,
                      t, -1000.0 * res.neg_tol_used);
        res.abort_reason = buf;
        record(t);
        break;
      }
    }
    if (step % every == 0 || step == n_steps) record(t);
    res.final_t = t;
  }

  res.final_state = u;
  res.final_t = res.records.back().t;
  return res;
}

TwinResult twin_run(const InitialData& make_u0, SolverConfig cfg_a, SolverConfig cfg_b) {
  if (cfg_a.grid.d != cfg_b.grid.d)
    throw std::invalid_argument("twin_run: dimensions differ");
  if (cfg_a.grid.n > cfg_b.grid.n || cfg_b.grid.n % cfg_a.grid.n != 0)
    throw std::invalid_argument("twin_run: second grid must refine the first");
  if (std::abs(cfg_a.t_end - cfg_b.t_end) > 1e-12)
    throw std::invalid_argument("twin_run: horizons differ");

  TwinResult tw;
  std::vector<std::pair<double, Field>> snap_a, snap_b;
  cfg_a.on_record = [&](double t, const Field& u) { snap_a.emplace_back(t, u); };
  cfg_b.on_record = [&](double t, const Field& u) { snap_b.emplace_back(t, u); };
  tw.a = run(make_u0(cfg_a.grid), cfg_a);
  tw.b = run(make_u0(cfg_b.grid), cfg_b);

  const std::size_t na = cfg_a.grid.n, stride = cfg_b.grid.n / na;
  const int d = cfg_a.grid.d;
  const double cell = cfg_a.grid.cell_volume();
  std::size_t jb = 0;
  for (const auto& [ta, ua] : snap_a) {
    while (jb < snap_b.size() && snap_b[jb].first < ta - 1e-9) ++jb;
    if (jb >= snap_b.size() || std::abs(snap_b[jb].first - ta) > 1e-9) continue;
    const Field& ub = snap_b[jb].second;
    double acc = 0.0;
    if (d == 1) {
      for (std::size_t i = 0; i < na; ++i) {
        const double diff = ua.v[i] - ub.v[i * stride];
        acc += diff * diff;
      }
    } else {
      const std::size_t nb = cfg_b.grid.n;
      for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t i2 = 0; i2 < na; ++i2) {
          const double diff = ua.v[i1 * na + i2] - ub.v[(i1 * stride) * nb + i2 * stride];
          acc += diff * diff;
        }
    }
    tw.times.push_back(ta);
    tw.distances.push_back(std::sqrt(cell * acc));
  }
  return tw;
}

}  // namespace fks
