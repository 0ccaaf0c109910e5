// pathint command-line workbench. Links only the C interface of libpathint.
//
// Usage: pathint <subcommand> [verb] [--key value]... [--config file]
// Subcommands: propagator partition green wick perturb pimc spectrum
//              instanton topology
// Exit codes: 0 success, 1 module error, 2 usage error.

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pathint/pathint.h"

namespace {

// ---------- deterministic JSON assembly ----------

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Insertion-ordered JSON object/array writer, doubles at 17 significant
// digits so identical runs emit byte-identical files.
class Json {
 public:
  static Json object() { return Json("{", "}"); }
  static Json array() { return Json("[", "]"); }

  Json& field(const std::string& key, const std::string& raw) {
    if (!first_) body_ += ",";
    first_ = false;
    body_ += "\"" + json_escape(key) + "\":" + raw;
    return *this;
  }
  Json& str(const std::string& key, const std::string& value) {
    return field(key, "\"" + json_escape(value) + "\"");
  }
  Json& num(const std::string& key, double value) { return field(key, format_double(value)); }
  Json& integer(const std::string& key, long long value) {
    return field(key, std::to_string(value));
  }
  Json& boolean(const std::string& key, bool value) {
    return field(key, value ? "true" : "false");
  }
  Json& obj(const std::string& key, const Json& value) { return field(key, value.render()); }

  Json& push(const std::string& raw) {
    if (!first_) body_ += ",";
    first_ = false;
    body_ += raw;
    return *this;
  }
  Json& push_num(double value) { return push(format_double(value)); }
  Json& push_obj(const Json& value) { return push(value.render()); }

  std::string render() const { return open_ + body_ + close_; }

 private:
  Json(std::string open, std::string close) : open_(std::move(open)), close_(std::move(close)) {}
  std::string open_, close_, body_;
  bool first_ = true;
};

// ---------- errors ----------

struct UsageError {
  std::string message;
};

struct RunError {
  pathint_status status;
  std::string message;
};

const char* status_name(pathint_status s) {
  switch (s) {
    case PATHINT_OK: return "ok";
    case PATHINT_ERR_DOMAIN: return "domain";
    case PATHINT_ERR_STRUCTURAL: return "structural";
    case PATHINT_ERR_CAPACITY: return "capacity";
    case PATHINT_ERR_CONFIG: return "config";
    case PATHINT_ERR_PRECONDITION: return "precondition";
    case PATHINT_ERR_UNSUPPORTED: return "unsupported";
    case PATHINT_ERR_CAUSTIC: return "caustic";
    case PATHINT_ERR_GRID: return "grid";
    case PATHINT_ERR_CONVERGENCE: return "convergence";
    default: return "internal";
  }
}

void check(pathint_status s) {
  if (s != PATHINT_OK) throw RunError{s, pathint_last_error()};
}

// ---------- key=value configuration ----------

struct KeySpec {
  std::string name;
  std::string default_value;  // empty string means "not set"
  bool is_flag = false;
};

class Config {
 public:
  explicit Config(std::vector<KeySpec> specs) : specs_(std::move(specs)) {
    for (const auto& s : specs_) values_[s.name] = s.default_value;
  }

  void set(const std::string& key, const std::string& value) {
    const std::string k = normalize(key);
    if (!values_.count(k)) throw UsageError{"unknown key '" + key + "'"};
    values_[k] = value;
    resolved_order_.push_back(k);
  }

  bool is_flag(const std::string& key) const {
    const std::string k = normalize(key);
    for (const auto& s : specs_) {
      if (s.name == k) return s.is_flag;
    }
    return false;
  }

  bool known(const std::string& key) const { return values_.count(normalize(key)) != 0; }

  std::string get(const std::string& key) const { return values_.at(key); }

  double get_double(const std::string& key) const {
    const std::string v = values_.at(key);
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (...) {
      throw UsageError{"key '" + key + "': expected a number, got '" + v + "'"};
    }
  }

  long long get_int(const std::string& key) const {
    const std::string v = values_.at(key);
    try {
      std::size_t pos = 0;
      const long long x = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (...) {
      throw UsageError{"key '" + key + "': expected an integer, got '" + v + "'"};
    }
  }

  std::uint64_t get_u64(const std::string& key) const {
    const std::string v = values_.at(key);
    try {
      std::size_t pos = 0;
      const unsigned long long x = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return static_cast<std::uint64_t>(x);
    } catch (...) {
      throw UsageError{"key '" + key + "': expected an unsigned integer, got '" + v + "'"};
    }
  }

  bool get_bool(const std::string& key) const {
    const std::string v = values_.at(key);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v.empty() || v == "0" || v == "false" || v == "no") return false;
    throw UsageError{"key '" + key + "': expected a boolean, got '" + v + "'"};
  }

  Json resolved_json() const {
    Json out = Json::object();
    for (const auto& s : specs_) out.str(s.name, values_.at(s.name));
    return out;
  }

  std::string canonical_string() const {
    std::string out;
    for (const auto& s : specs_) out += s.name + "=" + values_.at(s.name) + "\n";
    return out;
  }

  static std::string normalize(const std::string& key) {
    std::string out = key;
    for (auto& c : out) {
      if (c == '-') c = '_';
    }
    return out;
  }

 private:
  std::vector<KeySpec> specs_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> resolved_order_;
};

void load_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RunError{PATHINT_ERR_DOMAIN, "config file not found: " + path};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    auto ltrim = line.find_first_not_of(" \t\r");
    if (ltrim == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(ltrim, rtrim - ltrim + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError{path + ":" + std::to_string(lineno) + ": expected key=value"};
    }
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

// Parse argv into the config: file first (if --config given), flags win.
void parse_args(Config& cfg, const std::vector<std::string>& args) {
  // locate --config first so flags override the file
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError{"--config requires a path"};
      load_config_file(cfg, args[i + 1]);
    }
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      ++i;
      continue;
    }
    if (a.rfind("--", 0) != 0) throw UsageError{"unexpected argument '" + a + "'"};
    const std::string key = a.substr(2);
    if (cfg.is_flag(key) && (i + 1 >= args.size() || args[i + 1].rfind("--", 0) == 0)) {
      cfg.set(key, "1");
      continue;
    }
    if (i + 1 >= args.size()) throw UsageError{"flag '" + a + "' requires a value"};
    cfg.set(key, args[++i]);
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& s) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(s));
  return buf;
}

void emit(const Config& cfg, const std::string& subcommand, const Json& result) {
  const std::string fmt = cfg.get("format");
  if (fmt != "json") {
    throw UsageError{"format '" + fmt + "' is not supported by subcommand " + subcommand};
  }
  Json doc = Json::object();
  doc.str("schema", "pathint-manifest-1");
  doc.str("version", pathint_version());
  doc.str("subcommand", subcommand);
  doc.obj("config", cfg.resolved_json());
  doc.obj("result", result);
  const std::string text = doc.render() + "\n";
  const std::string out = cfg.known("output") ? cfg.get("output") : "";
  if (out.empty() || out == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw RunError{PATHINT_ERR_DOMAIN, "cannot open output file: " + out};
    f << text;
  }
}

// ---------- potential construction shared by subcommands ----------

struct PotentialHandle {
  pathint_potential* p = nullptr;
  ~PotentialHandle() { pathint_potential_destroy(p); }
};

void make_potential(const Config& cfg, PotentialHandle& h) {
  const std::string kind = cfg.get("potential");
  const double m = cfg.get_double("m");
  const double hbar = cfg.get_double("hbar");
  if (kind == "free") {
    check(pathint_potential_free_particle(m, hbar, &h.p));
  } else if (kind == "harmonic") {
    check(pathint_potential_harmonic(m, cfg.get_double("omega"), hbar, &h.p));
  } else if (kind == "anharmonic") {
    check(pathint_potential_anharmonic(m, cfg.get_double("omega"), cfg.get_double("lambda"), hbar,
                                       &h.p));
  } else if (kind == "double-well") {
    check(pathint_potential_double_well(cfg.get_double("lambda"), cfg.get_double("a"), m, hbar,
                                        &h.p));
  } else if (kind == "periodic") {
    check(pathint_potential_periodic(cfg.get_double("depth"), cfg.get_double("period"), m, hbar,
                                     &h.p));
  } else {
    throw UsageError{"unknown potential '" + kind + "'"};
  }
}

std::vector<KeySpec> potential_keys() {
  return {{"potential", "harmonic"}, {"m", "1"},     {"omega", "1"}, {"lambda", "1"},
          {"a", "1"},                {"depth", "1"}, {"period", "6.283185307179586"},
          {"hbar", "1"}};
}

std::vector<KeySpec> with_io(std::vector<KeySpec> keys) {
  keys.push_back({"format", "json"});
  keys.push_back({"output", ""});
  return keys;
}

// ---------- subcommands ----------

int run_propagator(const std::vector<std::string>& args) {
  auto keys = potential_keys();
  keys.insert(keys.end(), {{"beta", "1"},
                           {"q", "0"},
                           {"qp", "0"},
                           {"signature", "euclidean"},
                           {"method", "closed"},
                           {"n", "64"}});
  Config cfg(with_io(keys));
  parse_args(cfg, args);

  const std::string sig_s = cfg.get("signature");
  pathint_signature sig;
  if (sig_s == "euclidean") {
    sig = PATHINT_EUCLIDEAN;
  } else if (sig_s == "realtime" || sig_s == "real-time") {
    sig = PATHINT_REAL_TIME;
  } else {
    throw UsageError{"signature must be euclidean or realtime"};
  }
  const double beta = cfg.get_double("beta");
  const double q = cfg.get_double("q");
  const double qp = cfg.get_double("qp");
  const double m = cfg.get_double("m");
  const double hbar = cfg.get_double("hbar");
  const std::string kind = cfg.get("potential");
  const std::string method = cfg.get("method");

  Json result = Json::object();
  if (method == "closed") {
    pathint_propagator_value v;
    if (kind == "free") {
      check(pathint_free_propagator(q, qp, beta, m, hbar, sig, &v));
    } else if (kind == "harmonic") {
      check(pathint_ho_propagator(q, qp, beta, m, cfg.get_double("omega"), hbar, sig, &v));
    } else {
      throw UsageError{"closed-form propagators exist for free and harmonic potentials"};
    }
    result.num("prefactor_modulus", v.prefactor_modulus)
        .num("phase_re", v.phase_re)
        .num("phase_im", v.phase_im)
        .num("classical_action", v.classical_action)
        .num("value_re", v.value_re)
        .num("value_im", v.value_im);
  } else if (method == "lattice") {
    if (sig != PATHINT_EUCLIDEAN) throw UsageError{"lattice method is Euclidean only"};
    PotentialHandle pot;
    make_potential(cfg, pot);
    pathint_lattice* lat = nullptr;
    check(pathint_lattice_create(static_cast<size_t>(cfg.get_int("n")), beta, sig, &lat));
    double value = 0.0;
    const pathint_status s = pathint_lattice_propagator(q, qp, lat, pot.p, &value);
    pathint_lattice_destroy(lat);
    check(s);
    result.integer("n_slices", cfg.get_int("n")).num("value", value);
  } else {
    throw UsageError{"method must be closed or lattice"};
  }
  emit(cfg, "propagator", result);
  return 0;
}

int run_partition(const std::vector<std::string>& args) {
  auto keys = potential_keys();
  keys.insert(keys.end(), {{"beta", "1"}, {"method", "closed"}, {"n_states", "64"}});
  Config cfg(with_io(keys));
  parse_args(cfg, args);

  const double beta = cfg.get_double("beta");
  const double hbar = cfg.get_double("hbar");
  const std::string method = cfg.get("method");
  double z = 0.0;
  if (method == "closed") {
    check(pathint_ho_partition_function(beta, cfg.get_double("omega"), hbar, &z));
  } else if (method == "quadrature") {
    check(pathint_ho_partition_quadrature(beta, cfg.get_double("m"), cfg.get_double("omega"),
                                          hbar, &z));
  } else if (method == "spectrum") {
    PotentialHandle pot;
    make_potential(cfg, pot);
    pathint_spectrum* spec = nullptr;
    check(pathint_diagonalize_auto(pot.p, hbar, static_cast<size_t>(cfg.get_int("n_states")),
                                   &spec));
    const pathint_status s = pathint_partition_from_spectrum(spec, beta, &z);
    pathint_spectrum_destroy(spec);
    check(s);
  } else {
    throw UsageError{"method must be closed, quadrature or spectrum"};
  }
  Json result = Json::object();
  result.num("z", z);
  result.num("free_energy", -std::log(z) / beta);
  emit(cfg, "partition", result);
  return 0;
}

int run_green(const std::vector<std::string>& args) {
  Config cfg(with_io({{"kind", "dirichlet"},
                      {"tau", "0.5"},
                      {"taup", "0.5"},
                      {"beta", "10"},
                      {"m", "1"},
                      {"omega", "1"},
                      {"dt", "0"},
                      {"epsilon", "0.001"},
                      {"ladder", "0", true}}));
  parse_args(cfg, args);
  const std::string kind = cfg.get("kind");
  Json result = Json::object();
  if (kind == "dirichlet") {
    double g = 0.0;
    check(pathint_dirichlet_green(cfg.get_double("tau"), cfg.get_double("taup"),
                                  cfg.get_double("beta"), cfg.get_double("m"),
                                  cfg.get_double("omega"), &g));
    result.num("value", g);
  } else if (kind == "feynman") {
    const double dt = cfg.get_double("dt");
    const double omega = cfg.get_double("omega");
    if (cfg.get_bool("ladder")) {
      // default regulator ladder with a linear eps -> 0 extrapolation of the
      // two finest rungs; nothing about the extrapolation is hidden
      const double ladder[3] = {1e-2, 1e-3, 1e-4};
      double re[3], im[3], residual[3];
      Json rungs = Json::array();
      for (int i = 0; i < 3; ++i) {
        check(pathint_feynman_green(dt, omega, ladder[i], &re[i], &im[i], &residual[i]));
        Json rung = Json::object();
        rung.num("epsilon", ladder[i]).num("value_re", re[i]).num("value_im", im[i])
            .num("residual", residual[i]);
        rungs.push_obj(rung);
      }
      result.obj("ladder", rungs);
      result.num("extrapolated_re", re[2] + (re[2] - re[1]) / 9.0);
      result.num("extrapolated_im", im[2] + (im[2] - im[1]) / 9.0);
    } else {
      double re = 0, im = 0, residual = 0;
      check(pathint_feynman_green(dt, omega, cfg.get_double("epsilon"), &re, &im, &residual));
      result.num("value_re", re).num("value_im", im).num("residual", residual);
    }
  } else {
    throw UsageError{"kind must be dirichlet or feynman"};
  }
  emit(cfg, "green", result);
  return 0;
}

int run_wick(const std::vector<std::string>& args) {
  Config cfg(with_io({{"report", "first-order"},
                      {"n", "4"},
                      {"signature", "euclidean"},
                      {"beta", "25"},
                      {"m", "1"},
                      {"omega", "1"},
                      {"lambda", "1"},
                      {"hbar", "1"}}));
  parse_args(cfg, args);
  const std::string report = cfg.get("report");
  Json result = Json::object();
  if (report == "pairings") {
    uint64_t count = 0;
    check(pathint_pairing_count(static_cast<int>(cfg.get_int("n")), &count));
    result.integer("n_points", cfg.get_int("n"));
    result.integer("count", static_cast<long long>(count));
  } else if (report == "first-order") {
    const pathint_signature sig =
        cfg.get("signature") == "euclidean" ? PATHINT_EUCLIDEAN : PATHINT_REAL_TIME;
    pathint_wick_terms* terms = nullptr;
    check(pathint_first_order_terms(sig, &terms));
    Json arr = Json::array();
    uint64_t total = 0;
    for (size_t i = 0; i < pathint_wick_terms_count(terms); ++i) {
      uint64_t mult = 0;
      long long num = 0, den = 1;
      int connected = 0;
      size_t nf = 0;
      check(pathint_wick_term_info(terms, i, &mult, &num, &den, &connected, &nf));
      total += mult;
      Json term = Json::object();
      term.integer("multiplicity", static_cast<long long>(mult));
      term.str("coefficient", std::to_string(num) + "/" + std::to_string(den));
      term.boolean("connected", connected != 0);
      Json factors = Json::array();
      for (size_t f = 0; f < nf; ++f) {
        int li = 0, lj = 0;
        check(pathint_wick_term_factor(terms, i, f, &li, &lj));
        Json pair = Json::array();
        pair.push(std::to_string(li)).push(std::to_string(lj));
        factors.push_obj(pair);
      }
      term.obj("kernel_factors", factors);
      arr.push_obj(term);
    }
    pathint_wick_terms_destroy(terms);
    result.integer("total_assignments", static_cast<long long>(total));
    result.obj("terms", arr);
  } else if (report == "cancellation") {
    long long num = 0, den = 1;
    double numeric = 0.0;
    check(pathint_cancellation_check(cfg.get_double("beta"), cfg.get_double("m"),
                                     cfg.get_double("omega"), cfg.get_double("lambda"), &num,
                                     &den, &numeric));
    result.str("disconnected_residual", std::to_string(num) + "/" + std::to_string(den));
    result.num("disconnected_residual_numeric", numeric);
    result.boolean("cancels_exactly", num == 0);
  } else {
    throw UsageError{"report must be pairings, first-order or cancellation"};
  }
  emit(cfg, "wick", result);
  return 0;
}

int run_perturb(const std::vector<std::string>& args) {
  Config cfg(with_io({{"m", "1"},
                      {"omega", "1"},
                      {"lambda", "0.1"},
                      {"hbar", "1"},
                      {"route", "formula"},
                      {"beta_min", "22"},
                      {"beta_max", "42"},
                      {"points", "6"}}));
  parse_args(cfg, args);
  const double m = cfg.get_double("m");
  const double omega = cfg.get_double("omega");
  const double lambda = cfg.get_double("lambda");
  const double hbar = cfg.get_double("hbar");
  const std::string route = cfg.get("route");

  struct Row {
    std::string order;
    double value;
    double error_bar;
  };
  std::vector<Row> rows;
  if (route == "formula" || route == "all") {
    double e0 = 0.0;
    check(pathint_anharmonic_e0(m, omega, lambda, hbar, &e0));
    rows.push_back({"first-order", e0, 0.0});
  }
  if (route == "log-slope" || route == "all") {
    const long long n = cfg.get_int("points");
    if (n < 3) throw UsageError{"points must be >= 3"};
    const double b0 = cfg.get_double("beta_min");
    const double b1 = cfg.get_double("beta_max");
    std::vector<double> betas, ks;
    for (long long i = 0; i < n; ++i) {
      const double beta =
          b0 + (b1 - b0) * static_cast<double>(i) / static_cast<double>(n - 1);
      pathint_propagator_value v;
      check(pathint_ho_propagator(0, 0, beta, m, omega, hbar, PATHINT_EUCLIDEAN, &v));
      double ratio = 0.0;
      check(pathint_ke_ratio_first_order(beta, m, omega, lambda, hbar, &ratio));
      betas.push_back(beta);
      ks.push_back(v.value_re * std::exp(-beta * ratio));
    }
    double value = 0, err = 0;
    check(pathint_log_slope_energy(betas.data(), ks.data(), betas.size(), &value, &err));
    rows.push_back({"log-slope", value, err});
  }
  if (rows.empty()) throw UsageError{"route must be formula, log-slope or all"};

  if (cfg.get("format") == "csv") {
    std::ostringstream csv;
    csv << "# " << pathint_version() << " perturb config_hash="
        << hash_hex(cfg.canonical_string()) << "\n";
    csv << "order,value,error_bar\n";
    for (const auto& r : rows) {
      csv << r.order << "," << format_double(r.value) << "," << format_double(r.error_bar)
          << "\n";
    }
    const std::string out = cfg.get("output");
    if (out.empty() || out == "-") {
      std::fputs(csv.str().c_str(), stdout);
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw RunError{PATHINT_ERR_DOMAIN, "cannot open output file: " + out};
      f << csv.str();
    }
    return 0;
  }
  Json estimates = Json::array();
  for (const auto& r : rows) {
    Json row = Json::object();
    row.str("order", r.order).num("value", r.value).num("error_bar", r.error_bar);
    estimates.push_obj(row);
  }
  Json result = Json::object();
  result.obj("estimates", estimates);
  emit(cfg, "perturb", result);
  return 0;
}

int run_spectrum(const std::vector<std::string>& args) {
  auto keys = potential_keys();
  keys.insert(keys.end(),
              {{"n_states", "8"}, {"q_min", "0"}, {"q_max", "0"}, {"n_points", "0"},
               {"eigenfunctions", ""}});
  Config cfg(with_io(keys));
  parse_args(cfg, args);

  PotentialHandle pot;
  make_potential(cfg, pot);
  const double hbar = cfg.get_double("hbar");
  const size_t n_states = static_cast<size_t>(cfg.get_int("n_states"));

  pathint_spectrum* spec = nullptr;
  if (cfg.get_int("n_points") > 0) {
    check(pathint_diagonalize(pot.p, cfg.get_double("q_min"), cfg.get_double("q_max"),
                              static_cast<size_t>(cfg.get_int("n_points")), hbar, n_states,
                              &spec));
  } else {
    check(pathint_diagonalize_auto(pot.p, hbar, n_states, &spec));
  }

  Json result = Json::object();
  Json eigenvalues = Json::array();
  for (size_t j = 0; j < pathint_spectrum_size(spec); ++j) {
    double e = 0.0;
    check(pathint_spectrum_eigenvalue(spec, j, &e));
    eigenvalues.push_num(e);
  }
  result.obj("eigenvalues", eigenvalues);
  double qmin = 0, qmax = 0;
  size_t npts = 0;
  check(pathint_spectrum_grid(spec, &qmin, &qmax, &npts));
  result.num("grid_q_min", qmin).num("grid_q_max", qmax)
      .integer("grid_points", static_cast<long long>(npts));

  const std::string phi_path = cfg.get("eigenfunctions");
  if (!phi_path.empty()) {
    std::ofstream f(phi_path, std::ios::binary);
    if (!f) throw RunError{PATHINT_ERR_DOMAIN, "cannot open eigenfunction file: " + phi_path};
    f << "q";
    for (size_t j = 0; j < pathint_spectrum_size(spec); ++j) f << ",phi" << j;
    f << "\n";
    std::vector<std::vector<double>> phis(pathint_spectrum_size(spec),
                                          std::vector<double>(npts));
    for (size_t j = 0; j < phis.size(); ++j) {
      check(pathint_spectrum_eigenfunction(spec, j, phis[j].data(), npts));
    }
    const double h = (qmax - qmin) / static_cast<double>(npts - 1);
    for (size_t k = 0; k < npts; ++k) {
      f << format_double(qmin + static_cast<double>(k) * h);
      for (size_t j = 0; j < phis.size(); ++j) f << "," << format_double(phis[j][k]);
      f << "\n";
    }
    result.str("eigenfunctions_csv", phi_path);
  }
  pathint_spectrum_destroy(spec);
  emit(cfg, "spectrum", result);
  return 0;
}

int run_pimc(const std::vector<std::string>& args) {
  auto keys = potential_keys();
  keys.insert(keys.end(), {{"n_slices", "100"},
                           {"beta", "10"},
                           {"boundary", "periodic"},
                           {"q0", "0"},
                           {"q1", "0"},
                           {"sweeps", "20000"},
                           {"thermalization", "2000"},
                           {"chains", "4"},
                           {"step_width", "1"},
                           {"shift_moves", "0"},
                           {"shift_width", "1"},
                           {"record_every", "0"},
                           {"seed", "1"},
                           {"tau_max", "0"},
                           {"tune", "0", true}});
  Config cfg(with_io(keys));
  parse_args(cfg, args);

  PotentialHandle pot;
  make_potential(cfg, pot);

  pathint_pimc_params params = {};
  params.n_slices = static_cast<size_t>(cfg.get_int("n_slices"));
  params.beta = cfg.get_double("beta");
  const std::string boundary = cfg.get("boundary");
  if (boundary == "periodic") {
    params.boundary = PATHINT_PERIODIC;
  } else if (boundary == "fixed") {
    params.boundary = PATHINT_FIXED_ENDPOINTS;
  } else {
    throw UsageError{"boundary must be periodic or fixed"};
  }
  params.fixed_start = cfg.get_double("q0");
  params.fixed_end = cfg.get_double("q1");
  params.n_sweeps = cfg.get_int("sweeps");
  params.n_thermalization = cfg.get_int("thermalization");
  params.n_chains = static_cast<int>(cfg.get_int("chains"));
  params.step_width = cfg.get_double("step_width");
  params.shift_moves = cfg.get_bool("shift_moves") ? 1 : 0;
  params.shift_width = cfg.get_double("shift_width");
  params.record_every = cfg.get_int("record_every");
  params.seed = cfg.get_u64("seed");

  if (cfg.get_bool("tune")) {
    double tuned = 0.0;
    check(pathint_pimc_tune(pot.p, &params, &tuned));
    params.step_width = tuned;
  }

  pathint_ensemble* ens = nullptr;
  check(pathint_pimc_run(pot.p, &params, &ens));

  // output prefix: --output, else $PATHINT_OUTDIR/pimc, else ./pimc
  std::string prefix = cfg.known("output") ? cfg.get("output") : "";
  if (prefix.empty()) {
    const char* outdir = std::getenv("PATHINT_OUTDIR");
    prefix = outdir ? std::string(outdir) + "/pimc" : std::string("pimc");
  }
  const std::string csv_path = prefix + ".estimators.csv";
  const std::string manifest_path = prefix + ".manifest.json";

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) {
    pathint_ensemble_destroy(ens);
    throw RunError{PATHINT_ERR_DOMAIN, "cannot open output file: " + csv_path};
  }
  csv << "observable,tau,mean,std_error,n_effective\n";
  auto row = [&](const std::string& name, double tau, double mean, double err, double neff) {
    csv << name << "," << format_double(tau) << "," << format_double(mean) << ","
        << format_double(err) << "," << format_double(neff) << "\n";
  };
  double mean = 0, err = 0, neff = 0;
  check(pathint_ensemble_mean_position(ens, &mean, &err, &neff));
  row("mean_position", 0.0, mean, err, neff);
  check(pathint_ensemble_mean_square(ens, &mean, &err, &neff));
  row("mean_square", 0.0, mean, err, neff);

  if (params.boundary == PATHINT_PERIODIC) {
    double tau_max = cfg.get_double("tau_max");
    if (tau_max <= 0.0) tau_max = params.beta / 2.0;
    const double delta = params.beta / static_cast<double>(params.n_slices);
    std::vector<double> taus;
    for (double t = 0.0; t <= tau_max + 1e-12; t += delta) taus.push_back(t);
    std::vector<double> cm(taus.size()), ce(taus.size()), cn(taus.size());
    check(pathint_ensemble_correlation(ens, taus.data(), taus.size(), cm.data(), ce.data(),
                                       cn.data()));
    for (size_t i = 0; i < taus.size(); ++i) {
      row("correlation", taus[i], cm[i], ce[i], cn[i]);
    }
    std::vector<double> gt(taus.size()), gv(taus.size()), ge(taus.size());
    size_t ng = 0;
    check(pathint_ensemble_effective_gap(ens, tau_max, gt.data(), gv.data(), ge.data(),
                                         taus.size(), &ng));
    for (size_t i = 0; i < ng; ++i) {
      row("effective_gap", gt[i], gv[i], ge[i], 0.0);
    }
  }
  csv.close();

  const double acceptance = pathint_ensemble_acceptance(ens);
  pathint_ensemble_destroy(ens);

  Json manifest = Json::object();
  manifest.str("schema", "pathint-manifest-1");
  manifest.str("version", pathint_version());
  manifest.str("subcommand", "pimc");
  manifest.obj("config", cfg.resolved_json());
  manifest.integer("seed", static_cast<long long>(params.seed));
  manifest.num("step_width_used", params.step_width);
  manifest.num("acceptance_rate", acceptance);
  manifest.str("config_hash", hash_hex(cfg.canonical_string()));
  manifest.str("estimators_csv", csv_path);
  std::ofstream mf(manifest_path, std::ios::binary);
  if (!mf) throw RunError{PATHINT_ERR_DOMAIN, "cannot open output file: " + manifest_path};
  mf << manifest.render() << "\n";
  mf.close();
  std::printf("%s\n%s\n", csv_path.c_str(), manifest_path.c_str());
  return 0;
}

int run_instanton(const std::vector<std::string>& args) {
  Config cfg(with_io({{"lambda", "1"},
                      {"a", "2"},
                      {"hbar", "1"},
                      {"r", ""},
                      {"calibrate_from_oracle", "0", true},
                      {"beta", "10"},
                      {"endpoints", "same"},
                      {"sectors", "8"},
                      {"theta", ""}}));
  parse_args(cfg, args);

  const double lambda = cfg.get_double("lambda");
  const double a = cfg.get_double("a");
  const double hbar = cfg.get_double("hbar");

  double s_inst = 0, omega = 0;
  check(pathint_instanton_action(lambda, a, &s_inst, &omega));

  pathint_instanton_params params = {a, lambda, hbar, 0.0, 0};
  std::string provenance = "unset";
  if (cfg.get_bool("calibrate_from_oracle")) {
    pathint_potential* dw = nullptr;
    check(pathint_potential_double_well(lambda, a, 1.0, hbar, &dw));
    double oracle = 0.0;
    const pathint_status st = pathint_splitting_auto(dw, hbar, &oracle);
    pathint_potential_destroy(dw);
    check(st);
    check(pathint_calibrate_r(&params, oracle));
    provenance = "oracle";
  } else if (!cfg.get("r").empty()) {
    params.r = cfg.get_double("r");
    params.r_provenance = 1;
    provenance = "user";
  }

  Json result = Json::object();
  result.num("s_inst", s_inst).num("omega", omega).num("hbar", hbar);
  result.num("r", params.r).str("r_provenance", provenance);

  if (params.r_provenance != 0) {
    double de = 0.0;
    check(pathint_energy_splitting(&params, &de));
    result.num("energy_splitting", de);

    const int n_sectors = static_cast<int>(cfg.get_int("sectors"));
    std::vector<double> w(static_cast<size_t>(n_sectors)), ps(static_cast<size_t>(n_sectors));
    size_t n = 0;
    double closed = 0, em = 0, ep = 0, qp = 0;
    const int opposite = cfg.get("endpoints") == "opposite" ? 1 : 0;
    check(pathint_dilute_gas(cfg.get_double("beta"), &params, opposite, n_sectors, w.data(),
                             ps.data(), w.size(), &n, &closed, &em, &ep, &qp));
    Json sectors = Json::array();
    for (size_t i = 0; i < n; ++i) {
      Json sec = Json::object();
      sec.integer("instanton_count",
                  opposite ? 2 * static_cast<long long>(i) + 1 : 2 * static_cast<long long>(i));
      sec.num("weight", w[i]);
      sec.num("partial_sum", ps[i]);
      sectors.push_obj(sec);
    }
    result.obj("sectors", sectors);
    result.num("closed_form", closed).num("q_parameter", qp);
    result.num("energy_minus", em).num("energy_plus", ep);

    if (!cfg.get("theta").empty()) {
      double band = 0.0;
      check(pathint_periodic_band_energy(cfg.get_double("theta"), &params, &band));
      result.num("band_energy", band);
    }
  }
  emit(cfg, "instanton", result);
  return 0;
}

int run_topology(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError{"topology requires a verb: ab, statistics or dirac"};
  const std::string verb = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());

  if (verb == "ab") {
    Config cfg(with_io({{"phi12", "0"},
                        {"flux", "0"},
                        {"charge", "1"},
                        {"hbar", "1"},
                        {"c", "1"},
                        {"a1_re", "1"},
                        {"a1_im", "0"},
                        {"a2_re", "1"},
                        {"a2_im", "0"}}));
    parse_args(cfg, rest);
    pathint_interference_setup setup = {cfg.get_double("phi12"), cfg.get_double("flux"),
                                        cfg.get_double("charge"), cfg.get_double("hbar"),
                                        cfg.get_double("c")};
    double raw = 0, mod = 0, intensity = 0;
    check(pathint_ab_phase(&setup, &raw, &mod));
    check(pathint_two_slit_intensity(cfg.get_double("a1_re"), cfg.get_double("a1_im"),
                                     cfg.get_double("a2_re"), cfg.get_double("a2_im"), &setup,
                                     &intensity));
    Json result = Json::object();
    result.num("phase_raw", raw).num("phase_mod_2pi", mod).num("intensity", intensity);
    emit(cfg, "topology/ab", result);
    return 0;
  }
  if (verb == "statistics") {
    Config cfg(with_io({{"dimension", "3"}, {"phi", "0"}, {"n_max", "4"}}));
    parse_args(cfg, rest);
    int continuous = 0;
    double allowed[8];
    size_t n = 0;
    check(pathint_statistics_solutions(static_cast<int>(cfg.get_int("dimension")), &continuous,
                                       allowed, 8, &n));
    Json result = Json::object();
    result.boolean("continuous", continuous != 0);
    Json arr = Json::array();
    for (size_t i = 0; i < n; ++i) arr.push_num(allowed[i]);
    result.obj("allowed_phases", arr);
    // sector coefficients for the requested phi; the (dimension, phi) pair is
    // validated, so an illegal 3D phase is rejected here
    const double phi = cfg.get_double("phi");
    const long long n_max = cfg.get_int("n_max");
    const int dim = static_cast<int>(cfg.get_int("dimension"));
    Json coeffs = Json::array();
    for (long long k = 0; k <= n_max; ++k) {
      double re = 0, im = 0;
      check(pathint_statistics_phase_coefficient(dim, phi, static_cast<int>(k), &re, &im));
      Json c = Json::object();
      c.integer("n", k).num("re", re).num("im", im);
      coeffs.push_obj(c);
    }
    result.obj("sector_coefficients", coeffs);
    emit(cfg, "topology/statistics", result);
    return 0;
  }
  if (verb == "dirac") {
    Config cfg(with_io({{"n", "1"}, {"g", "0.5"}, {"hbar", "1"}, {"c", "1"}}));
    parse_args(cfg, rest);
    double e = 0.0;
    check(pathint_dirac_charge_unit(static_cast<int>(cfg.get_int("n")), cfg.get_double("g"),
                                    cfg.get_double("hbar"), cfg.get_double("c"), &e));
    Json result = Json::object();
    result.num("charge", e);
    result.num("product_eg", e * cfg.get_double("g"));
    emit(cfg, "topology/dirac", result);
    return 0;
  }
  throw UsageError{"unknown topology verb '" + verb + "'"};
}

void print_usage() {
  std::fputs(
      "usage: pathint <subcommand> [--key value]... [--config file]\n"
      "subcommands:\n"
      "  propagator  closed-form or lattice propagators\n"
      "  partition   harmonic partition function (closed, quadrature, spectrum)\n"
      "  green       Dirichlet or Feynman Green's functions\n"
      "  wick        pairing counts, first-order terms, cancellation report\n"
      "  perturb     anharmonic ground-state energy estimates\n"
      "  pimc        Metropolis path sampling; CSV estimators + JSON manifest\n"
      "  spectrum    finite-difference eigensolver\n"
      "  instanton   instanton action, dilute gas, splitting, theta band\n"
      "  topology    ab | statistics | dirac\n",
      stderr);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    print_usage();
    return args.empty() ? 2 : 0;
  }
  const std::string sub = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    if (sub == "propagator") return run_propagator(rest);
    if (sub == "partition") return run_partition(rest);
    if (sub == "green") return run_green(rest);
    if (sub == "wick") return run_wick(rest);
    if (sub == "perturb") return run_perturb(rest);
    if (sub == "pimc") return run_pimc(rest);
    if (sub == "spectrum") return run_spectrum(rest);
    if (sub == "instanton") return run_instanton(rest);
    if (sub == "topology") return run_topology(rest);
    std::fprintf(stderr, "pathint: usage: unknown subcommand '%s'\n", sub.c_str());
    print_usage();
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "pathint: usage: %s\n", e.message.c_str());
    return 2;
  } catch (const RunError& e) {
    std::fprintf(stderr, "pathint: error: %s: %s\n", status_name(e.status), e.message.c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pathint: error: internal: %s\n", e.what());
    return 1;
  }
}
