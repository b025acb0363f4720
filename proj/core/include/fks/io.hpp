#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fks/dynamics.hpp"
#include "fks/verifier.hpp"

namespace fks {

// Stderr logging gated by FKS_LOG = quiet | info | debug (default info).
// Timestamps live only here, never in data files.
enum class LogLevel { quiet = 0, info = 1, debug = 2 };
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// Shortest round-trip decimal rendering (locale-independent); "nan"/"inf"
// verbatim for non-finite values.
std::string format_num(double x);

struct InitialDataSpec {
  std::string kind;  // constant | perturbed_one | cosine_bump | random_trig
  double amplitude = 1.0;
  long modes = 1;
  std::uint64_t seed = 0;
};

struct OutputSpec {
  std::string trajectory_csv_path;
  std::string certificates_ndjson_path;
  std::string checkpoint_path;
};

// Parsed and validated run configuration; defaults resolved (eps from the
// supercritical midpoint rule when absent), digest computed over the
// canonical model/grid/solver/initial_data content (output paths excluded).
struct RunConfig {
  ModelParams params;
  TorusGrid grid;
  double dt = 0.0;
  double t_end = 1.0;
  Scheme scheme = Scheme::IMEX2;
  bool dealias = true;
  double neg_tol = 0.0;
  std::size_t record_every = 1;
  InitialDataSpec init;
  OutputSpec outputs;
  std::string digest;
};

// Strict JSON parsing: unknown keys anywhere are errors, as are fields a
// given initial-data kind does not accept; seed is mandatory for (and only
// accepted by) random_trig. Throws std::runtime_error with a message.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

Field build_initial_data(const RunConfig& rc);
SolverConfig to_solver_config(const RunConfig& rc);
std::string params_digest_of(const RunConfig& rc);  // 16 hex chars (FNV-1a 64)

// Fixed-order CSV: t,L1,Lp,L2,Linf,Halpha2,min_u,osc,v_min,v_max,env_L1,
// env_Lp,env_Linf,flags. flags is a semicolon-joined subset of
// {neg, env_L1, env_Lp, env_Linf}.
std::string trajectory_csv(const RunResult& rr);
void write_trajectory_csv(const std::string& path, const RunResult& rr);

// One JSON object per line, fixed key order:
// {claim_id, status, worst_margin, samples, tolerances, params_digest}.
// Non-finite margins serialize as null.
std::string certificates_ndjson(const std::vector<Certificate>& certs,
                                const std::string& digest);
void write_certificates_ndjson(const std::string& path, const std::vector<Certificate>& certs,
                               const std::string& digest);

// All explicit constants as a JSON object with fixed key order; NaN entries
// (regime-void) and nonpositive decay rates serialize as null.
std::string constants_json(const PaperConstants& pc);

struct Checkpoint {
  int d = 1;
  std::size_t n = 8;
  double t = 0.0, dt = 0.0;
  double alpha = 1.0, chi = 1.0, r = 0.5, eps = 0.25;
  std::vector<double> u;  // row-major nodal values
};

// Binary layout: "FKSL", u32 version (=1), u32 d, u64 n, six f64 (t, dt,
// alpha, chi, r, eps), u64 sample count, payload of f64 little-endian,
// trailing CRC-32 (IEEE reflected) of the payload bytes.
void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);  // throws on magic/CRC mismatch

std::uint32_t crc32_bytes(const unsigned char* data, std::size_t len);

// FNV-1a 64 of the byte string, as 16 lowercase hex chars (the digest encoding
// used for params digests).
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fks
