#pragma once
// Flat text run configuration: one `key = value` pair per line, dotted
// prefixes for sections, `#` to end-of-line comments. Example:
//
//   n = 2
//   k = 1
//   alpha = 3
//   beta = 1
//   grid.mode = axisymmetric      # or latlon (needs grid.n_phi)
//   grid.n_theta = 128
//   initial.harmonic.base = rhat  # keyword: the stationary radius
//   initial.harmonic.eps = 0.1
//   initial.harmonic.l = 2
//   initial.harmonic.m = 0
//   mode = mean_convex
//   output.csv_path = run.csv
//   output.json_path = run.json
//
// Exactly one of initial.constant / initial.harmonic.* / initial.node_values
// must be given. Omitted optional keys take the documented defaults
// (stopping.tol_grad = 1e-8, stopping.tol_r = 1e-6, stopping.t_max = 100,
// integrator.safety = 0.2, integrator.record_stride = 50,
// mode = mean_convex). Parse errors name the offending key and line.

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/sphgrid.hpp"

namespace hypflow {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  GridMode mode = GridMode::Axisymmetric1D;
  int n_theta = 0;
  int n_phi = 0;  // latlon only
};

enum class InitialKind { Constant, Harmonic, NodeValues };

struct HarmonicInit {
  double base = 0.0;
  bool base_is_rhat = false;  // `base = rhat`: use the stationary radius
  double eps = 0.0;
  int l = 0;
  int m = 0;
};

// Which a priori envelope family a run is verified against.
enum class CheckMode { MeanConvex, UniformlyConvex, Unchecked };

struct OutputConfig {
  std::string csv_path;   // per-record diagnostics; empty = don't write
  std::string json_path;  // summary document; empty = don't write
};

// Exponent lists for the sweep subcommand; empty outside sweeps.
struct SweepConfig {
  std::vector<double> alphas;
  std::vector<double> betas;
};

struct RunConfig {
  FlowParams params;
  GridConfig grid;
  InitialKind initial_kind = InitialKind::Constant;
  double initial_constant = 0.0;
  HarmonicInit harmonic;
  std::string node_values_path;
  RunParams run;  // stopping.* and integrator.* land here
  CheckMode mode = CheckMode::MeanConvex;
  OutputConfig output;
  SweepConfig sweep;
};

// Parses a config document plus `key=value` override strings (applied
// after the file, replacing or adding entries). Throws ConfigError with a
// message naming the key and the line (overrides report "override" in
// place of a line number).
RunConfig parse_config(std::string_view text,
                       std::span<const std::string> overrides = {});

// Reads the file and delegates to parse_config. Throws ConfigError if the
// file cannot be read.
RunConfig load_config(const std::string& path,
                      std::span<const std::string> overrides = {});

}  // namespace hypflow
