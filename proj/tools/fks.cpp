// Command-line driver: simulate, certify, and report.
//
// Subcommands
//   run <config.json>          integrate one trajectory, certify, write outputs
//   constants ...              print every explicit constant for a parameter point
//   oracle-check ...           cross-check spectral vs singular-integral operator
//   twin <a.json> <b.json>     distance between two discretizations of one flow
//   lemmas ...                 sampled functional-inequality certificates
//   sweep <sweep.json>         run a batch of configs on a thread pool
//
// Exit codes: 0 success, 1 at least one certificate failed, 2 configuration or
// usage error, 3 solver abort (negativity / non-finite state).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

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

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

fks::Checkpoint final_checkpoint(const fks::RunConfig& rc, const fks::RunResult& rr) {
  fks::Checkpoint ck;
  ck.d = rc.grid.d;
  ck.n = rc.grid.n;
  ck.t = rr.final_t;
  ck.dt = rr.dt_used;
  ck.alpha = rc.params.alpha;
  ck.chi = rc.params.chi;
  ck.r = rc.params.r;
  ck.eps = rc.params.eps;
  ck.u = rr.final_state.v;
  return ck;
}

void print_certificates(const std::vector<fks::Certificate>& certs, int* n_fail) {
  int pass = 0, fail = 0, outside = 0;
  for (const auto& c : certs) {
    std::cout << "CERT " << c.claim_id << ' ' << fks::to_string(c.status)
              << " margin=" << fks::format_num(c.worst_margin) << " samples=" << c.samples
              << '\n';
    switch (c.status) {
      case fks::CertStatus::pass: ++pass; break;
      case fks::CertStatus::fail: ++fail; break;
      case fks::CertStatus::outside_hypotheses: ++outside; break;
    }
  }
  std::cout << "SUMMARY pass=" << pass << " fail=" << fail << " outside=" << outside << '\n';
  *n_fail = fail;
}

int cmd_run(const std::string& path) {
  fks::RunConfig rc;
  try {
    rc = fks::load_run_config(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    fks::Field u0 = fks::build_initial_data(rc);
    fks::SolverConfig cfg = fks::to_solver_config(rc);
    fks::RunResult rr = fks::run(u0, cfg);
    if (!rc.outputs.trajectory_csv_path.empty())
      fks::write_trajectory_csv(rc.outputs.trajectory_csv_path, rr);
    if (!rc.outputs.checkpoint_path.empty())
      fks::save_checkpoint(rc.outputs.checkpoint_path, final_checkpoint(rc, rr));
    std::cout << "params_digest " << rc.digest << '\n';
    if (rr.aborted) {
      std::cout << "ABORT " << rr.abort_reason << '\n';
      return 3;
    }
    std::vector<fks::Certificate> certs = fks::certify_trajectory(rr, cfg);
    if (!rc.outputs.certificates_ndjson_path.empty())
      fks::write_certificates_ndjson(rc.outputs.certificates_ndjson_path, certs, rc.digest);
    int n_fail = 0;
    print_certificates(certs, &n_fail);
    return n_fail > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_constants(int d, double alpha, double chi, double r, double eps, bool eps_given) {
  try {
    if (!eps_given) eps = fks::default_eps(d, alpha, chi, r);
    fks::ModelParams mp(d, alpha, chi, r, eps);
    // Data-dependent entries are evaluated at the reference state u == 1.
    fks::UZeroNorms u0;
    u0.l1 = std::pow(fks::kTwoPi, d);
    u0.lp = std::pow(fks::kTwoPi, d / mp.p());
    u0.linf = 1.0;
    std::cout << fks::constants_json(fks::compute_constants(mp, u0));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_oracle_check(int d, double alpha, std::size_t n, std::uint64_t seed, int count, int nodes,
                     double tol) {
  try {
    fks::TorusGrid g(d, n);
    fks::Rng rng(seed);
    const int max_mode = static_cast<int>(std::min<std::size_t>(n / 4, 16));
    std::unique_ptr<fks::SingularEvaluator2D> ev;
    if (d == 2) ev = std::make_unique<fks::SingularEvaluator2D>(alpha);
    double overall = 0.0;
    for (int i = 0; i < count; ++i) {
      fks::SpectralField uhat = fks::random_trig_poly(g, max_mode, 1.0, rng);
      fks::SpectralField lam = fks::frac_laplacian(uhat, alpha);
      double ref = fks::linf_grid(fks::inverse_transform(lam));
      if (ref <= 0.0) ref = 1.0;
      double worst = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const double x[2] = {-fks::kPi + j * (fks::kTwoPi / nodes) + 0.37 * g.h(),
                             -fks::kPi + ((j * 7) % nodes) * (fks::kTwoPi / nodes) + 0.61 * g.h()};
        const double spec = fks::eval_interpolant(lam, x);
        const double sing =
            d == 2 ? ev->eval(uhat, x) : fks::frac_laplacian_singular(uhat, alpha, x);
        worst = std::max(worst, std::fabs(spec - sing) / ref);
      }
      std::cout << "field " << i << " max_rel=" << fks::format_num(worst) << '\n';
      overall = std::max(overall, worst);
    }
    std::cout << "max_rel " << fks::format_num(overall) << '\n';
    return overall <= tol ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_twin(const std::string& path_a, const std::string& path_b) {
  fks::RunConfig a, b;
  try {
    a = fks::load_run_config(path_a);
    b = fks::load_run_config(path_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (a.params.d != b.params.d || a.params.alpha != b.params.alpha ||
      a.params.chi != b.params.chi || a.params.r != b.params.r || a.params.eps != b.params.eps) {
    std::cerr << "error: twin: model sections differ\n";
    return 2;
  }
  if (a.init.kind != b.init.kind || a.init.amplitude != b.init.amplitude ||
      a.init.modes != b.init.modes || a.init.seed != b.init.seed) {
    std::cerr << "error: twin: initial_data sections differ\n";
    return 2;
  }
  try {
    const fks::RunConfig proto = a;
    fks::InitialData make_u0 = [proto](const fks::TorusGrid& g) {
      fks::RunConfig tmp = proto;
      tmp.grid = g;
      return fks::build_initial_data(tmp);
    };
    fks::TwinResult tw =
        fks::twin_run(make_u0, fks::to_solver_config(a), fks::to_solver_config(b));
    if (tw.a.aborted || tw.b.aborted) {
      const fks::RunResult& bad = tw.a.aborted ? tw.a : tw.b;
      std::cout << "ABORT " << bad.abort_reason << '\n';
      return 3;
    }
    std::cout << "t,distance\n";
    for (std::size_t i = 0; i < tw.times.size(); ++i)
      std::cout << fks::format_num(tw.times[i]) << ',' << fks::format_num(tw.distances[i])
                << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_lemmas(int d, double alpha, double s, double delta, std::size_t count, std::uint64_t seed,
               std::size_t n) {
  try {
    std::vector<fks::Certificate> certs =
        fks::certify_lemmas_static(d, alpha, s, delta, count, seed, n);
    ordered_json flags;
    flags["d"] = d;
    flags["alpha"] = alpha;
    flags["s"] = s;
    flags["delta"] = delta;
    flags["count"] = count;
    flags["seed"] = seed;
    flags["n"] = n;
    ordered_json canon;
    canon["lemmas"] = flags;
    std::cout << fks::certificates_ndjson(certs, fks::fnv1a_hex(canon.dump()));
    for (const auto& c : certs)
      if (c.status == fks::CertStatus::fail) return 1;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_sweep(const std::string& path, int jobs, const std::string& out_dir) {
  std::vector<fks::RunConfig> rcs;
  try {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("sweep: cannot open " + path);
    const std::string text{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    json doc = json::parse(text);
    if (!doc.is_object() || doc.size() != 1 || !doc.contains("runs") || !doc["runs"].is_array() ||
        doc["runs"].empty())
      throw std::runtime_error("sweep: expected a single top-level key \"runs\" holding a "
                               "nonempty array of run configs");
    const json& arr = doc["runs"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (arr[i].is_object() && arr[i].contains("outputs"))
        throw std::runtime_error("sweep: run " + std::to_string(i) +
                                 ": output paths are derived from the params digest; drop the "
                                 "outputs section");
      try {
        rcs.push_back(fks::parse_run_config(arr[i].dump()));
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep: run " + std::to_string(i) + ": " + e.what());
      }
    }
    std::set<std::string> seen;
    for (const auto& rc : rcs)
      if (!seen.insert(rc.digest).second)
        throw std::runtime_error("sweep: duplicate params digest " + rc.digest);
    std::filesystem::create_directories(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  struct Entry {
    std::string digest;
    bool aborted = false;
    std::string abort_reason;
    int pass = 0, fail = 0, outside = 0;
  };
  std::vector<Entry> results(rcs.size());
  std::atomic<std::size_t> next{0};
  const unsigned pool_size =
      jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rcs.size()) return;
      const fks::RunConfig& rc = rcs[i];
      Entry& e = results[i];
      e.digest = rc.digest;
      const std::filesystem::path base = std::filesystem::path(out_dir) / ("run_" + rc.digest);
      try {
        fks::Field u0 = fks::build_initial_data(rc);
        fks::SolverConfig cfg = fks::to_solver_config(rc);
        fks::RunResult rr = fks::run(u0, cfg);
        fks::write_trajectory_csv(base.string() + ".csv", rr);
        fks::save_checkpoint(base.string() + ".ckpt", final_checkpoint(rc, rr));
        if (rr.aborted) {
          e.aborted = true;
          e.abort_reason = rr.abort_reason;
          continue;
        }
        std::vector<fks::Certificate> certs = fks::certify_trajectory(rr, cfg);
        fks::write_certificates_ndjson(base.string() + ".ndjson", certs, rc.digest);
        for (const auto& c : certs) switch (c.status) {
            case fks::CertStatus::pass: ++e.pass; break;
            case fks::CertStatus::fail: ++e.fail; break;
            case fks::CertStatus::outside_hypotheses: ++e.outside; break;
          }
      } catch (const std::exception& ex) {
        e.aborted = true;
        e.abort_reason = std::string("exception: ") + ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = std::min<unsigned>(pool_size, static_cast<unsigned>(rcs.size()));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  bool any_abort = false, any_fail = false;
  for (const Entry& e : results) {
    if (e.aborted) {
      std::cout << "run " << e.digest << " ABORT " << e.abort_reason << '\n';
      any_abort = true;
    } else {
      std::cout << "run " << e.digest << " pass=" << e.pass << " fail=" << e.fail
                << " outside=" << e.outside << '\n';
      if (e.fail > 0) any_fail = true;
    }
  }
  return any_abort ? 3 : (any_fail ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral solver and certificate engine for a fractional Keller-Segel "
               "system with logistic growth on the torus"};
  app.require_subcommand(1);

  std::string run_path;
  CLI::App* c_run = app.add_subcommand("run", "integrate one trajectory, certify, write outputs");
  c_run->add_option("config", run_path, "run config (JSON)")->required();

  int k_d = 1;
  double k_alpha = 1.0, k_chi = 1.0, k_r = 0.5, k_eps = 0.0;
  bool k_eps_given = false;
  CLI::App* c_const =
      app.add_subcommand("constants", "print every explicit constant for a parameter point");
  c_const->add_option("--d", k_d, "dimension (1 or 2)")->required();
  c_const->add_option("--alpha", k_alpha, "diffusion exponent in (0,2)")->required();
  c_const->add_option("--chi", k_chi, "aggregation strength")->required();
  c_const->add_option("--r", k_r, "logistic rate")->required();
  c_const->add_option("--eps", k_eps, "slack parameter in (0,r); default: admissible midpoint")
      ->each([&](const std::string&) { k_eps_given = true; });

  int o_d = 1, o_count = 5, o_nodes = 16;
  double o_alpha = 1.0, o_tol = 1e-5;
  std::size_t o_n = 64;
  std::uint64_t o_seed = 1;
  CLI::App* c_oracle = app.add_subcommand(
      "oracle-check", "cross-check the spectral operator against the singular-integral route");
  c_oracle->add_option("--d", o_d, "dimension (1 or 2)")->required();
  c_oracle->add_option("--alpha", o_alpha, "diffusion exponent in (0,2)")->required();
  c_oracle->add_option("--n", o_n, "grid size per dimension (power of two, >= 8)")->required();
  c_oracle->add_option("--seed", o_seed, "field generator seed")->required();
  c_oracle->add_option("--count", o_count, "number of random fields")
      ->check(CLI::PositiveNumber);
  c_oracle->add_option("--nodes", o_nodes, "off-grid sample points per field")
      ->check(CLI::PositiveNumber);
  c_oracle->add_option("--tol", o_tol, "relative discrepancy tolerance")
      ->check(CLI::PositiveNumber);

  std::string twin_a, twin_b;
  CLI::App* c_twin = app.add_subcommand(
      "twin", "distance between two discretizations of one flow at matched record times");
  c_twin->add_option("config_a", twin_a, "first run config (coarser or equal grid)")->required();
  c_twin->add_option("config_b", twin_b, "second run config")->required();

  int l_d = 1;
  double l_alpha = 1.0, l_s = 1.0, l_delta = 0.1;
  std::size_t l_count = 0, l_n = 64;
  std::uint64_t l_seed = 1;
  CLI::App* c_lem =
      app.add_subcommand("lemmas", "sampled functional-inequality certificates (NDJSON)");
  c_lem->add_option("--count", l_count, "number of random positive fields")
      ->required()
      ->check(CLI::PositiveNumber);
  c_lem->add_option("--seed", l_seed, "field generator seed")->required();
  c_lem->add_option("--s", l_s, "entropy exponent s");
  c_lem->add_option("--delta", l_delta, "interpolation slack delta");
  c_lem->add_option("--d", l_d, "dimension (1 or 2)");
  c_lem->add_option("--alpha", l_alpha, "diffusion exponent in (0,2)");
  c_lem->add_option("--n", l_n, "grid size per dimension (power of two, >= 8)");

  std::string sweep_path, sweep_out = ".";
  int sweep_jobs = 0;
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "run a batch of configs on a thread pool, one file set per run");
  c_sweep->add_option("sweep_config", sweep_path, "JSON with a single key \"runs\"")->required();
  c_sweep->add_option("--jobs", sweep_jobs, "worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  c_sweep->add_option("--out-dir", sweep_out, "directory for run_<digest>.{csv,ndjson,ckpt}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (c_run->parsed()) return cmd_run(run_path);
  if (c_const->parsed()) return cmd_constants(k_d, k_alpha, k_chi, k_r, k_eps, k_eps_given);
  if (c_oracle->parsed())
    return cmd_oracle_check(o_d, o_alpha, o_n, o_seed, o_count, o_nodes, o_tol);
  if (c_twin->parsed()) return cmd_twin(twin_a, twin_b);
  if (c_lem->parsed()) return cmd_lemmas(l_d, l_alpha, l_s, l_delta, l_count, l_seed, l_n);
  if (c_sweep->parsed()) return cmd_sweep(sweep_path, sweep_jobs, sweep_out);
  return 2;
}
