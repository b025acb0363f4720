#include "fks/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fks/rng.hpp"

namespace fks {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_config(const std::string& msg) {
  throw std::runtime_error("config: " + msg);
}

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) bad_config("unknown key '" + item.key() + "' in " + where);
  }
}

const json& need(const json& obj, const char* where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_config(std::string("missing required key '") + key + "' in " + where);
  return *it;
}

double num(const json& v, const std::string& what) {
  if (!v.is_number()) bad_config(what + " must be a number");
  return v.get<double>();
}

std::uint64_t uint(const json& v, const std::string& what) {
  if (!v.is_number_unsigned()) bad_config(what + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// Exactly integral values serialize as JSON integers ("P_sharp": 1, not 1.0),
// everything else as shortest round-trip doubles.
void json_num(ordered_json& o, const char* key, double v) {
  if (v == std::floor(v) && std::fabs(v) <= 9007199254740992.0)
    o[key] = static_cast<std::int64_t>(v);
  else
    o[key] = v;
}

void json_set(ordered_json& o, const char* key, double v) {
  if (std::isfinite(v))
    json_num(o, key, v);
  else
    o[key] = nullptr;
}

// decay rates carry absent-semantics: null unless strictly positive
void json_set_rate(ordered_json& o, const char* key, double v) {
  if (std::isfinite(v) && v > 0.0)
    json_num(o, key, v);
  else
    o[key] = nullptr;
}

template <class T>
void wr(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void rd(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof v);
}

}  // namespace

LogLevel log_level() {
  static const LogLevel lvl = [] {
    const char* e = std::getenv("FKS_LOG");
    if (!e) return LogLevel::info;
    const std::string s(e);
    if (s == "quiet") return LogLevel::quiet;
    if (s == "debug") return LogLevel::debug;
    if (s == "info") return LogLevel::info;
    std::cerr << "[fks] unrecognized FKS_LOG value '" << s << "', using info\n";
    return LogLevel::info;
  }();
  return lvl;
}

namespace {
void log_at(const char* tag, const std::string& msg) {
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::cerr << "[" << stamp << " " << tag << "] " << msg << "\n";
}
}  // namespace

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) log_at("info", msg);
}
void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) log_at("debug", msg);
}

std::string format_num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    bad_config(std::string("JSON parse failure: ") + e.what());
  }
  if (!root.is_object()) bad_config("top level must be an object");
  check_keys(root, "top level", {"model", "grid", "solver", "initial_data", "outputs"});

  RunConfig rc;

  const json& jg = need(root, "top level", "grid");
  check_keys(jg, "grid", {"d", "n"});
  const int d = int(uint(need(jg, "grid", "d"), "grid.d"));
  const std::size_t n = std::size_t(uint(need(jg, "grid", "n"), "grid.n"));
  try {
    rc.grid = TorusGrid(d, n);
  } catch (const std::exception& e) {
    bad_config(e.what());
  }

  const json& jm = need(root, "top level", "model");
  check_keys(jm, "model", {"alpha", "chi", "r", "eps"});
  const double alpha = num(need(jm, "model", "alpha"), "model.alpha");
  const double chi = num(need(jm, "model", "chi"), "model.chi");
  const double r = num(need(jm, "model", "r"), "model.r");
  double eps;
  if (jm.contains("eps")) {
    eps = num(jm["eps"], "model.eps");
  } else {
    if (!(alpha > 0.0 && alpha < 2.0 && chi > r && r > 0.0))
      bad_config("model parameters must satisfy 0 < alpha < 2 and chi > r > 0");
    eps = default_eps(d, alpha, chi, r);
  }
  try {
    rc.params = ModelParams(d, alpha, chi, r, eps);
  } catch (const std::exception& e) {
    bad_config(e.what());
  }

  const json& js = need(root, "top level", "solver");
  check_keys(js, "solver", {"t_end", "dt", "scheme", "dealias", "neg_tol", "record_every"});
  rc.t_end = num(need(js, "solver", "t_end"), "solver.t_end");
  if (!(rc.t_end > 0.0)) bad_config("solver.t_end must be positive");
  if (js.contains("dt")) {
    rc.dt = num(js["dt"], "solver.dt");
    if (!(rc.dt > 0.0)) bad_config("solver.dt must be positive when given");
  }
  if (js.contains("scheme")) {
    const std::string s = js["scheme"].is_string() ? js["scheme"].get<std::string>() : "";
    if (s == "IMEX1")
      rc.scheme = Scheme::IMEX1;
    else if (s == "IMEX2")
      rc.scheme = Scheme::IMEX2;
    else
      bad_config("solver.scheme must be \"IMEX1\" or \"IMEX2\"");
  }
  if (js.contains("dealias")) {
    if (!js["dealias"].is_boolean()) bad_config("solver.dealias must be a boolean");
    rc.dealias = js["dealias"].get<bool>();
  }
  if (js.contains("neg_tol")) {
    rc.neg_tol = num(js["neg_tol"], "solver.neg_tol");
    if (!(rc.neg_tol > 0.0)) bad_config("solver.neg_tol must be positive when given");
  }
  bool re_given = false;
  if (js.contains("record_every")) {
    rc.record_every = std::size_t(uint(js["record_every"], "solver.record_every"));
    re_given = true;
  }

  const json& ji = need(root, "top level", "initial_data");
  if (!need(ji, "initial_data", "kind").is_string()) bad_config("initial_data.kind must be a string");
  rc.init.kind = ji["kind"].get<std::string>();
  const auto get_amp = [&](double dflt) {
    rc.init.amplitude = ji.contains("amplitude")
                            ? num(ji["amplitude"], "initial_data.amplitude")
                            : dflt;
    if (!std::isfinite(rc.init.amplitude)) bad_config("initial_data.amplitude must be finite");
  };
  const auto get_modes = [&](long dflt) {
    rc.init.modes = ji.contains("modes") ? long(uint(ji["modes"], "initial_data.modes")) : dflt;
    if (rc.init.modes < 1 || rc.init.modes > long(rc.grid.n / 2) - 1)
      bad_config("initial_data.modes must lie in [1, n/2 - 1]");
  };
  if (rc.init.kind == "constant") {
    check_keys(ji, "initial_data", {"kind", "amplitude"});
    get_amp(1.0);
    if (rc.init.amplitude < 0.0) bad_config("constant initial data must be nonnegative");
  } else if (rc.init.kind == "perturbed_one") {
    check_keys(ji, "initial_data", {"kind", "amplitude", "modes"});
    get_amp(0.1);
    get_modes(1);
  } else if (rc.init.kind == "cosine_bump") {
    check_keys(ji, "initial_data", {"kind", "amplitude", "modes"});
    get_amp(1.0);
    get_modes(1);
  } else if (rc.init.kind == "random_trig") {
    check_keys(ji, "initial_data", {"kind", "amplitude", "modes", "seed"});
    get_amp(1.0);
    get_modes(4);
    rc.init.seed = uint(need(ji, "initial_data (random kind)", "seed"), "initial_data.seed");
  } else {
    bad_config("initial_data.kind must be one of constant, perturbed_one, cosine_bump, random_trig");
  }

  if (root.contains("outputs")) {
    const json& jo = root["outputs"];
    check_keys(jo, "outputs",
               {"trajectory_csv_path", "certificates_ndjson_path", "checkpoint_path",
                "record_every"});
    const auto get_path = [&](const char* key, std::string& dst) {
      if (!jo.contains(key)) return;
      if (!jo[key].is_string()) bad_config(std::string("outputs.") + key + " must be a string");
      dst = jo[key].get<std::string>();
    };
    get_path("trajectory_csv_path", rc.outputs.trajectory_csv_path);
    get_path("certificates_ndjson_path", rc.outputs.certificates_ndjson_path);
    get_path("checkpoint_path", rc.outputs.checkpoint_path);
    if (jo.contains("record_every")) {
      if (re_given) bad_config("record_every given in both solver and outputs");
      rc.record_every = std::size_t(uint(jo["record_every"], "outputs.record_every"));
    }
  }
  if (rc.record_every < 1) bad_config("record_every must be >= 1");

  rc.digest = params_digest_of(rc);
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string params_digest_of(const RunConfig& rc) {
  ordered_json c;
  c["model"] = {{"alpha", rc.params.alpha},
                {"chi", rc.params.chi},
                {"r", rc.params.r},
                {"eps", rc.params.eps}};
  c["grid"] = {{"d", rc.params.d}, {"n", rc.grid.n}};
  c["solver"] = {{"dt", rc.dt},
                 {"t_end", rc.t_end},
                 {"scheme", rc.scheme == Scheme::IMEX1 ? "IMEX1" : "IMEX2"},
                 {"dealias", rc.dealias},
                 {"neg_tol", rc.neg_tol},
                 {"record_every", rc.record_every}};
  ordered_json init;
  init["kind"] = rc.init.kind;
  init["amplitude"] = rc.init.amplitude;
  if (rc.init.kind != "constant") init["modes"] = rc.init.modes;
  if (rc.init.kind == "random_trig") init["seed"] = rc.init.seed;
  c["initial_data"] = init;
  return hex16(fnv1a64(c.dump()));
}

std::string fnv1a_hex(const std::string& bytes) { return hex16(fnv1a64(bytes)); }

Field build_initial_data(const RunConfig& rc) {
  const TorusGrid& g = rc.grid;
  Field u(g);
  const double a = rc.init.amplitude;
  const double m = double(rc.init.modes);
  if (rc.init.kind == "constant") {
    for (double& v : u.v) v = a;
  } else if (rc.init.kind == "perturbed_one") {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x1 = g.node(g.d == 1 ? i : i / g.n);
      u.v[i] = 1.0 + a * std::cos(m * x1);
    }
  } else if (rc.init.kind == "cosine_bump") {
    for (std::size_t i = 0; i < g.size(); ++i) {
      double prod = a;
      if (g.d == 1) {
        prod *= 0.5 * (1.0 + std::cos(m * g.node(i)));
      } else {
        prod *= 0.5 * (1.0 + std::cos(m * g.node(i / g.n)));
        prod *= 0.5 * (1.0 + std::cos(m * g.node(i % g.n)));
      }
      u.v[i] = prod;
    }
  } else if (rc.init.kind == "random_trig") {
    Rng rng(rc.init.seed);
    u = random_positive_field(g, rc.init.modes, a, 1.0, rng);
  } else {
    throw std::runtime_error("config: unknown initial data kind " + rc.init.kind);
  }
  return u;
}

SolverConfig to_solver_config(const RunConfig& rc) {
  SolverConfig sc;
  sc.grid = rc.grid;
  sc.params = rc.params;
  sc.dt = rc.dt;
  sc.t_end = rc.t_end;
  sc.scheme = rc.scheme;
  sc.dealias = rc.dealias;
  sc.record_every = rc.record_every;
  sc.neg_tol = rc.neg_tol;
  return sc;
}

std::string trajectory_csv(const RunResult& rr) {
  std::string out =
      "t,L1,Lp,L2,Linf,Halpha2,min_u,osc,v_min,v_max,env_L1,env_Lp,env_Linf,flags\n";
  for (const auto& rec : rr.records) {
    out += format_num(rec.t);
    for (double v : {rec.l1, rec.lp, rec.l2, rec.linf, rec.h_alpha2, rec.min_u, rec.osc,
                     rec.v_min, rec.v_max, rec.env_l1, rec.env_lp, rec.env_linf}) {
      out += ',';
      out += format_num(v);
    }
    out += ',';
    bool first = true;
    const auto flag = [&](bool on, const char* name) {
      if (!on) return;
      if (!first) out += ';';
      out += name;
      first = false;
    };
    flag(rec.neg_breach, "neg");
    flag(rec.env_breach_l1, "env_L1");
    flag(rec.env_breach_lp, "env_Lp");
    flag(rec.env_breach_linf, "env_Linf");
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const std::string& path, const RunResult& rr) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot write " + path);
  f << trajectory_csv(rr);
}

std::string certificates_ndjson(const std::vector<Certificate>& certs,
                                const std::string& digest) {
  std::string out;
  for (const Certificate& c : certs) {
    ordered_json o;
    o["claim_id"] = c.claim_id;
    o["status"] = to_string(c.status);
    json_set(o, "worst_margin", c.worst_margin);
    o["samples"] = c.samples;
    o["tolerances"] = {{"rel", c.tol_rel}, {"abs", c.tol_abs}};
    o["params_digest"] = digest;
    out += o.dump();
    out += '\n';
  }
  return out;
}

void write_certificates_ndjson(const std::string& path, const std::vector<Certificate>& certs,
                               const std::string& digest) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot write " + path);
  f << certificates_ndjson(certs, digest);
}

std::string constants_json(const PaperConstants& pc) {
  ordered_json o;
  o["d"] = pc.params.d;
  json_set(o, "alpha", pc.params.alpha);
  json_set(o, "chi", pc.params.chi);
  json_set(o, "r", pc.params.r);
  json_set(o, "eps", pc.params.eps);
  json_set(o, "u0_l1", pc.u0.l1);
  json_set(o, "u0_lp", pc.u0.lp);
  json_set(o, "u0_linf", pc.u0.linf);
  json_set(o, "p", pc.p);
  json_set(o, "s", pc.s);
  json_set(o, "sigma", pc.sigma);
  o["sigma_exceeds_one"] = pc.sigma_exceeds_one;
  json_set(o, "e_exp", pc.e_exp);
  json_set(o, "t0", pc.t0);
  json_set(o, "C_d_alpha", pc.C);
  json_set(o, "P_d_alpha", pc.P_general);
  json_set(o, "P_sharp", pc.P_sharp);
  json_set(o, "P_used", pc.P_used);
  json_set(o, "M1", pc.M1);
  json_set(o, "M2", pc.M2);
  json_set(o, "M1_sharp", pc.M1_sharp);
  json_set(o, "M2_sharp", pc.M2_sharp);
  json_set(o, "A", pc.A);
  json_set(o, "R0", pc.R0);
  json_set(o, "R1", pc.R1);
  json_set(o, "R2", pc.R2);
  json_set(o, "R2_tilde", pc.R2_tilde);
  json_set(o, "K", pc.K);
  json_set(o, "K_tilde", pc.K_tilde);
  json_set(o, "F", pc.F);
  json_set(o, "R3_bar", pc.R3_bar);
  json_set(o, "R_inf_tilde", pc.R_inf_tilde);
  json_set(o, "ssc1_lhs", pc.ssc1_lhs);
  json_set_rate(o, "gamma", pc.gamma);
  json_set_rate(o, "gamma_cor", pc.gamma_cor);
  json_set(o, "S_entropy", pc.S_entropy);
  json_set(o, "delta_used", pc.delta_used);
  json_set(o, "thm2b_threshold", pc.thm2b_thresh);
  json_set(o, "delta_thm2b", pc.delta_thm2b);
  return o.dump(2) + "\n";
}

std::uint32_t crc32_bytes(const unsigned char* data, std::size_t len) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  const std::size_t expect = ck.d == 1 ? ck.n : ck.n * ck.n;
  if (ck.u.size() != expect)
    throw std::runtime_error("checkpoint: sample count does not match the grid");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot write " + path);
  f.write("FKSL", 4);
  wr(f, std::uint32_t{1});
  wr(f, std::uint32_t(ck.d));
  wr(f, std::uint64_t(ck.n));
  wr(f, ck.t);
  wr(f, ck.dt);
  wr(f, ck.alpha);
  wr(f, ck.chi);
  wr(f, ck.r);
  wr(f, ck.eps);
  wr(f, std::uint64_t(ck.u.size()));
  f.write(reinterpret_cast<const char*>(ck.u.data()),
          std::streamsize(ck.u.size() * sizeof(double)));
  const std::uint32_t crc =
      crc32_bytes(reinterpret_cast<const unsigned char*>(ck.u.data()), ck.u.size() * sizeof(double));
  wr(f, crc);
  if (!f) throw std::runtime_error("io: short write to " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("io: cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, "FKSL", 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  std::uint32_t version = 0, d32 = 0;
  std::uint64_t n = 0, count = 0;
  rd(f, version);
  if (version != 1) throw std::runtime_error("checkpoint: unsupported format version");
  rd(f, d32);
  rd(f, n);
  Checkpoint ck;
  ck.d = int(d32);
  ck.n = std::size_t(n);
  rd(f, ck.t);
  rd(f, ck.dt);
  rd(f, ck.alpha);
  rd(f, ck.chi);
  rd(f, ck.r);
  rd(f, ck.eps);
  rd(f, count);
  if (!f || (ck.d != 1 && ck.d != 2))
    throw std::runtime_error("checkpoint: corrupt header in " + path);
  const std::uint64_t expect = ck.d == 1 ? n : n * n;
  if (count != expect) throw std::runtime_error("checkpoint: sample count mismatch in " + path);
  ck.u.resize(std::size_t(count));
  f.read(reinterpret_cast<char*>(ck.u.data()), std::streamsize(count * sizeof(double)));
  std::uint32_t crc_stored = 0;
  rd(f, crc_stored);
  if (!f) throw std::runtime_error("checkpoint: truncated file " + path);
  const std::uint32_t crc =
      crc32_bytes(reinterpret_cast<const unsigned char*>(ck.u.data()), ck.u.size() * sizeof(double));
  if (crc != crc_stored) throw std::runtime_error("checkpoint: CRC mismatch in " + path);
  return ck;
}

}  // namespace fks
