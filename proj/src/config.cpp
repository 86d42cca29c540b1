#include "hypflow/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace hypflow {

namespace {

// Where a raw entry came from, for error messages: a line number, or an
// --override flag (line 0).
std::string at(int line) {
  return line > 0 ? "line " + std::to_string(line) : std::string("override");
}

struct RawEntry {
  std::string value;
  int line;
};

using RawMap = std::map<std::string, RawEntry>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.')) {
      return false;
    }
  }
  return true;
}

// Splits one `key = value` assignment; `line` <= 0 marks an override.
void insert_assignment(RawMap& raw, std::string_view stmt, int line,
                       bool allow_replace) {
  const std::size_t eq = stmt.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(at(line) + ": expected 'key = value', got '" +
                      std::string(stmt) + "'");
  }
  const std::string key{trim(stmt.substr(0, eq))};
  const std::string value{trim(stmt.substr(eq + 1))};
  if (!valid_key(key)) {
    throw ConfigError(at(line) + ": malformed key '" + key + "'");
  }
  if (value.empty()) {
    throw ConfigError(at(line) + ": key '" + key + "' has an empty value");
  }
  auto [it, inserted] = raw.insert({key, RawEntry{value, line}});
  if (!inserted) {
    if (!allow_replace) {
      throw ConfigError(at(line) + ": duplicate key '" + key +
                        "' (first set at " + at(it->second.line) + ")");
    }
    it->second = RawEntry{value, line};
  }
}

RawMap collect(std::string_view text, std::span<const std::string> overrides) {
  RawMap raw;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view full =
        text.substr(pos, end == std::string_view::npos ? end : end - pos);
    ++line;
    const std::size_t hash = full.find('#');
    if (hash != std::string_view::npos) full = full.substr(0, hash);
    full = trim(full);
    if (!full.empty()) insert_assignment(raw, full, line, false);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  for (const std::string& o : overrides) {
    insert_assignment(raw, o, 0, true);
  }
  return raw;
}

// Pulls typed values out of the raw map, consuming entries as it goes;
// whatever is left at the end is an unknown key.
class Extractor {
 public:
  explicit Extractor(RawMap raw) : raw_(std::move(raw)) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  std::string take_string(const std::string& key) {
    const RawEntry e = pop(key);
    return e.value;
  }

  double take_double(const std::string& key) {
    const RawEntry e = pop(key);
    return to_double(key, e);
  }

  double take_double_or(const std::string& key, double fallback) {
    return has(key) ? take_double(key) : fallback;
  }

  int take_int(const std::string& key) {
    const RawEntry e = pop(key);
    return to_int(key, e);
  }

  int take_int_or(const std::string& key, int fallback) {
    return has(key) ? take_int(key) : fallback;
  }

  std::vector<double> take_double_list(const std::string& key) {
    const RawEntry e = pop(key);
    std::vector<double> out;
    std::string_view rest = e.value;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (item.empty()) {
        throw ConfigError(at(e.line) + ": key '" + key +
                          "' has an empty list element");
      }
      out.push_back(to_double(key, RawEntry{std::string(item), e.line}));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  int line_of(const std::string& key) const {
    const auto it = raw_.find(key);
    return it == raw_.end() ? 0 : it->second.line;
  }

  [[noreturn]] void fail(const std::string& key, int line,
                         const std::string& what) const {
    throw ConfigError(at(line) + ": " + what +
                      (what.find(key) == std::string::npos
                           ? " (key '" + key + "')"
                           : ""));
  }

  void finish() const {
    if (!raw_.empty()) {
      const auto& [key, entry] = *raw_.begin();
      throw ConfigError(at(entry.line) + ": unknown key '" + key + "'");
    }
  }

 private:
  RawEntry pop(const std::string& key) {
    const auto it = raw_.find(key);
    if (it == raw_.end()) {
      throw ConfigError("missing required key '" + key + "'");
    }
    RawEntry e = it->second;
    raw_.erase(it);
    return e;
  }

  double to_double(const std::string& key, const RawEntry& e) const {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + e.value.size() || !std::isfinite(v)) {
      throw ConfigError(at(e.line) + ": key '" + key +
                        "' needs a finite number, got '" + e.value + "'");
    }
    return v;
  }

  int to_int(const std::string& key, const RawEntry& e) const {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end != begin + e.value.size() || v < -1000000000L ||
        v > 1000000000L) {
      throw ConfigError(at(e.line) + ": key '" + key +
                        "' needs an integer, got '" + e.value + "'");
    }
    return static_cast<int>(v);
  }

  RawMap raw_;
};

}  // namespace

RunConfig parse_config(std::string_view text,
                       std::span<const std::string> overrides) {
  Extractor ex(collect(text, overrides));
  RunConfig cfg;

  // --- exponents ---
  {
    const int n_line = ex.line_of("n");
    cfg.params.n = ex.take_int("n");
    if (cfg.params.n < 2) ex.fail("n", n_line, "n must be at least 2");
    const int k_line = ex.line_of("k");
    cfg.params.k = ex.take_int("k");
    if (cfg.params.k < 1 || cfg.params.k > cfg.params.n) {
      ex.fail("k", k_line, "k must lie in [1, n]");
    }
    cfg.params.alpha = ex.take_double("alpha");
    const int b_line = ex.line_of("beta");
    cfg.params.beta = ex.take_double("beta");
    if (!(cfg.params.beta > 0.0)) {
      ex.fail("beta", b_line, "beta must be positive");
    }
  }

  // --- grid ---
  {
    const int mode_line = ex.line_of("grid.mode");
    const std::string mode = ex.take_string("grid.mode");
    if (mode == "axisymmetric" || mode == "axisym") {
      cfg.grid.mode = GridMode::Axisymmetric1D;
    } else if (mode == "latlon") {
      cfg.grid.mode = GridMode::LatLon2D;
    } else {
      ex.fail("grid.mode", mode_line,
              "grid.mode must be 'axisymmetric' or 'latlon', got '" + mode +
                  "'");
    }
    const int nt_line =
        ex.has("grid.n_theta") ? ex.line_of("grid.n_theta")
                               : ex.line_of("grid.N_theta");
    cfg.grid.n_theta = ex.has("grid.N_theta") ? ex.take_int("grid.N_theta")
                                              : ex.take_int("grid.n_theta");
    if (cfg.grid.n_theta < 3) {
      ex.fail("grid.n_theta", nt_line, "grid.n_theta must be at least 3");
    }
    const bool has_np = ex.has("grid.n_phi") || ex.has("grid.N_phi");
    if (cfg.grid.mode == GridMode::LatLon2D) {
      cfg.grid.n_phi = ex.has("grid.N_phi") ? ex.take_int("grid.N_phi")
                                            : ex.take_int("grid.n_phi");
    } else if (has_np) {
      const std::string key = ex.has("grid.n_phi") ? "grid.n_phi"
                                                   : "grid.N_phi";
      ex.fail(key, ex.line_of(key),
              "grid.n_phi only applies to grid.mode = latlon");
    }
  }

  // --- initial data (exactly one flavor) ---
  {
    const bool has_const = ex.has("initial.constant");
    const bool has_harm =
        ex.has("initial.harmonic.base") || ex.has("initial.harmonic.eps") ||
        ex.has("initial.harmonic.l") || ex.has("initial.harmonic.m");
    const bool has_nodes = ex.has("initial.node_values");
    const int flavors = int(has_const) + int(has_harm) + int(has_nodes);
    if (flavors != 1) {
      throw ConfigError(
          "exactly one of initial.constant, initial.harmonic.*, "
          "initial.node_values must be given");
    }
    if (has_const) {
      cfg.initial_kind = InitialKind::Constant;
      const int line = ex.line_of("initial.constant");
      cfg.initial_constant = ex.take_double("initial.constant");
      if (!(cfg.initial_constant > 0.0)) {
        ex.fail("initial.constant", line,
                "initial.constant must be positive");
      }
    } else if (has_harm) {
      cfg.initial_kind = InitialKind::Harmonic;
      const int base_line = ex.line_of("initial.harmonic.base");
      const std::string base = ex.take_string("initial.harmonic.base");
      if (base == "rhat") {
        cfg.harmonic.base_is_rhat = true;
      } else {
        char* end = nullptr;
        cfg.harmonic.base = std::strtod(base.c_str(), &end);
        if (end != base.c_str() + base.size() ||
            !(cfg.harmonic.base > 0.0) || !std::isfinite(cfg.harmonic.base)) {
          ex.fail("initial.harmonic.base", base_line,
                  "initial.harmonic.base must be a positive number or "
                  "'rhat', got '" + base + "'");
        }
      }
      cfg.harmonic.eps = ex.take_double("initial.harmonic.eps");
      const int l_line = ex.line_of("initial.harmonic.l");
      cfg.harmonic.l = ex.take_int("initial.harmonic.l");
      const int m_line = ex.line_of("initial.harmonic.m");
      cfg.harmonic.m = ex.take_int_or("initial.harmonic.m", 0);
      if (cfg.harmonic.l < 0 || std::abs(cfg.harmonic.m) > cfg.harmonic.l) {
        ex.fail("initial.harmonic.l", l_line ? l_line : m_line,
                "initial.harmonic needs l >= 0 and |m| <= l");
      }
    } else {
      cfg.initial_kind = InitialKind::NodeValues;
      cfg.node_values_path = ex.take_string("initial.node_values");
    }
  }

  // --- stopping / integrator ---
  {
    const int tg_line = ex.line_of("stopping.tol_grad");
    cfg.run.tol_grad = ex.take_double_or("stopping.tol_grad", 1e-8);
    if (!(cfg.run.tol_grad > 0.0)) {
      ex.fail("stopping.tol_grad", tg_line,
              "stopping.tol_grad must be positive");
    }
    const int tr_line = ex.line_of("stopping.tol_r");
    cfg.run.tol_radius = ex.take_double_or("stopping.tol_r", 1e-6);
    if (!(cfg.run.tol_radius > 0.0)) {
      ex.fail("stopping.tol_r", tr_line, "stopping.tol_r must be positive");
    }
    const int tm_line = ex.line_of("stopping.t_max");
    cfg.run.t_max = ex.take_double_or("stopping.t_max", 100.0);
    if (!(cfg.run.t_max > 0.0)) {
      ex.fail("stopping.t_max", tm_line, "stopping.t_max must be positive");
    }
    const int sf_line = ex.line_of("integrator.safety");
    cfg.run.safety = ex.take_double_or("integrator.safety", 0.2);
    if (!(cfg.run.safety > 0.0 && cfg.run.safety <= 1.0)) {
      ex.fail("integrator.safety", sf_line,
              "integrator.safety must lie in (0, 1]");
    }
    const int rs_line = ex.line_of("integrator.record_stride");
    cfg.run.record_stride = ex.take_int_or("integrator.record_stride", 50);
    if (cfg.run.record_stride < 1) {
      ex.fail("integrator.record_stride", rs_line,
              "integrator.record_stride must be at least 1");
    }
  }

  // --- verification mode ---
  if (ex.has("mode")) {
    const int line = ex.line_of("mode");
    const std::string mode = ex.take_string("mode");
    if (mode == "mean_convex") {
      cfg.mode = CheckMode::MeanConvex;
    } else if (mode == "uniformly_convex") {
      cfg.mode = CheckMode::UniformlyConvex;
    } else if (mode == "unchecked") {
      cfg.mode = CheckMode::Unchecked;
    } else {
      ex.fail("mode", line,
              "mode must be mean_convex, uniformly_convex, or unchecked, "
              "got '" + mode + "'");
    }
  }

  // --- output paths ---
  if (ex.has("output.csv_path")) {
    cfg.output.csv_path = ex.take_string("output.csv_path");
  }
  if (ex.has("output.json_path")) {
    cfg.output.json_path = ex.take_string("output.json_path");
  }

  // --- sweep lists ---
  if (ex.has("sweep.alpha")) {
    cfg.sweep.alphas = ex.take_double_list("sweep.alpha");
  }
  if (ex.has("sweep.beta")) {
    cfg.sweep.betas = ex.take_double_list("sweep.beta");
  }

  ex.finish();
  return cfg;
}

RunConfig load_config(const std::string& path,
                      std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace hypflow
