#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fks/dynamics.hpp"

namespace fks {

enum class CertStatus { pass, fail, outside_hypotheses };
const char* to_string(CertStatus s);

// One certified claim. worst_margin is the minimum over samples of the raw
// signed margin (bound - quantity); the pass/fail decision adds the declared
// slack |bound| * tol_rel + tol_abs to every comparison.
struct Certificate {
  std::string claim_id;
  CertStatus status = CertStatus::pass;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  double tol_rel = 1e-6;
  double tol_abs = 1e-8;
  std::string details;  // clause notes; never serialized into NDJSON
};

// Evaluate every trajectory-level claim on a finished run, in fixed order:
// SIGN_V, COMPARISON_V, L1_BERNOULLI, LEMMA_LP, THM1_LINF, THM1_LIMSUP,
// THM2_OSC_DECAY, COR1_OSC_DECAY, THM2B_CONVERGENCE. Claims whose parameter
// gates fail are reported outside_hypotheses with the comparison still
// evaluated where it is arithmetically defined.
std::vector<Certificate> certify_trajectory(const RunResult& rr, const SolverConfig& cfg);

// Refinement-study claim (THM3_TWIN): dts is the timestep ladder (size >= 3,
// decreasing), pair_distances[i] the final-time distance between the runs at
// dts[i] and dts[i+1]. Requires the fitted log-log slope >= 0.9; a finite
// grid_distance adds the spectral-refinement clause grid_distance <= grid_tol.
// alpha <= 1 gates the claim to outside_hypotheses.
Certificate certify_twin(const std::vector<double>& dts,
                         const std::vector<double>& pair_distances, double alpha,
                         double grid_distance = std::numeric_limits<double>::quiet_NaN(),
                         double grid_tol = 1e-8);

// Static-field claims LEM_A1_ENTROPY, LEM_A2_POINCARE, LEM_A3_DICHOTOMY over
// `count` random positive trigonometric fields on an n-per-dim grid.
std::vector<Certificate> certify_lemmas_static(int d, double alpha, double s, double delta,
                                               std::size_t count, std::uint64_t seed,
                                               std::size_t n);

}  // namespace fks
