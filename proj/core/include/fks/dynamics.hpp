#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fks/constants.hpp"
#include "fks/grid.hpp"

namespace fks {

// Time steppers: implicit Levy diffusion, explicit drift and logistic terms.
// IMEX1 is backward-Euler/forward-Euler; IMEX2 is SBDF2 (bootstrapped by one
// IMEX1 step).
enum class Scheme { IMEX1, IMEX2 };

struct SolverConfig {
  TorusGrid grid;
  ModelParams params;
  double dt = 0.0;     // <= 0 selects 0.5 min{h / (chi |grad v0|_inf + 1), 0.1/r}
  double t_end = 1.0;
  Scheme scheme = Scheme::IMEX2;
  bool dealias = true;            // 2/3 rule on the quadratic products
  std::size_t record_every = 1;   // diagnostics every this many steps
  double neg_tol = 0.0;           // <= 0 selects 1e-10 |u0|_inf; breach flags
                                  // at -neg_tol, abort at -1000 neg_tol
  // Optional observer invoked at every record with the current state.
  std::function<void(double, const Field&)> on_record;
};

struct TrajectoryRecord {
  double t = 0.0;
  double l1 = 0.0, lp = 0.0, l2 = 0.0, linf = 0.0;
  double h_alpha2 = 0.0;  // homogeneous Sobolev seminorm of order alpha/2
  double min_u = 0.0;     // interpolant minimum (refined below the grid)
  double osc = 0.0;       // interpolant max - min
  double v_min = 0.0, v_max = 0.0;
  double env_l1 = 0.0, env_lp = 0.0, env_linf = 0.0;  // NaN when undefined
  bool neg_breach = false;  // interpolant dipped below -neg_tol since last record
  bool env_breach_l1 = false, env_breach_lp = false, env_breach_linf = false;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;
  Field final_state;
  double final_t = 0.0;
  double dt_used = 0.0;
  double neg_tol_used = 0.0;
  bool aborted = false;
  std::string abort_reason;
  PaperConstants constants;
};

// Integrate from u0 (nodal values on cfg.grid) to t_end, recording norms,
// extrema, the elliptic potential range, and the running bound envelopes.
// Aborts (without throwing) on loss of finiteness or a negativity excursion
// past the abort threshold.
RunResult run(const Field& u0, const SolverConfig& cfg);

// Initial data as a function of the grid, so refinement studies sample the
// same underlying profile on every resolution.
using InitialData = std::function<Field(const TorusGrid&)>;

struct TwinResult {
  std::vector<double> times;      // matched record times
  std::vector<double> distances;  // discrete L^2 distance on the coarse nodes
  RunResult a, b;
};

// Run the same initial profile under two configurations (same d; the finer
// grid must be a multiple refinement of the coarser) and compare states at
// coinciding record times on the shared nodes.
TwinResult twin_run(const InitialData& make_u0, SolverConfig cfg_a, SolverConfig cfg_b);

// Exact solution of y' = r y (1 - y), y(0) = c (oracle for spatially
// homogeneous states).
double logistic_exact(double c, double r, double t);

}  // namespace fks
