#include "hypflow/config.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using namespace hypflow;

namespace {

const char* kMinimal = R"(
n = 2
k = 1
alpha = 3
beta = 1
grid.mode = axisymmetric
grid.n_theta = 128
initial.constant = 1.5
)";

std::string message_of(const char* text,
                       const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config parses with the documented defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.params.n == 2);
  CHECK(cfg.params.k == 1);
  CHECK(cfg.params.alpha == 3.0);
  CHECK(cfg.params.beta == 1.0);
  CHECK(cfg.grid.mode == GridMode::Axisymmetric1D);
  CHECK(cfg.grid.n_theta == 128);
  CHECK(cfg.initial_kind == InitialKind::Constant);
  CHECK(cfg.initial_constant == 1.5);
  CHECK(cfg.run.tol_grad == 1e-8);
  CHECK(cfg.run.tol_radius == 1e-6);
  CHECK(cfg.run.t_max == 100.0);
  CHECK(cfg.run.safety == 0.2);
  CHECK(cfg.run.record_stride == 50);
  CHECK(cfg.mode == CheckMode::MeanConvex);
  CHECK(cfg.output.csv_path.empty());
  CHECK(cfg.output.json_path.empty());
  CHECK(cfg.sweep.alphas.empty());
}

TEST_CASE("comments, blank lines, and spacing are immaterial") {
  const RunConfig cfg = parse_config(
      "# header comment\n"
      "n=2\n"
      "  k   =  1   # trailing comment\n"
      "\n"
      "alpha = 3\nbeta = 1\n"
      "grid.mode = axisym\n"
      "grid.n_theta = 65\n"
      "initial.constant = 1.0\n");
  CHECK(cfg.grid.mode == GridMode::Axisymmetric1D);
  CHECK(cfg.grid.n_theta == 65);
}

TEST_CASE("nonpositive beta is rejected with the canonical message") {
  const std::string msg = message_of(
      "n = 2\nk = 1\nalpha = 3\nbeta = 0\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\ninitial.constant = 1\n");
  CHECK(msg.find("beta must be positive") != std::string::npos);
  CHECK(msg.find("line 4") != std::string::npos);
}

TEST_CASE("parse errors name the key and the line") {
  SUBCASE("unknown key") {
    const std::string msg =
        message_of("n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
                   "grid.mode = axisymmetric\ngrid.n_theta = 33\n"
                   "initial.constant = 1\nmystery.key = 7\n");
    CHECK(msg.find("unknown key 'mystery.key'") != std::string::npos);
    CHECK(msg.find("line 8") != std::string::npos);
  }
  SUBCASE("type mismatch") {
    const std::string msg =
        message_of("n = 2\nk = 1\nalpha = fast\nbeta = 1\n"
                   "grid.mode = axisymmetric\ngrid.n_theta = 33\n"
                   "initial.constant = 1\n");
    CHECK(msg.find("'alpha'") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("missing required key") {
    const std::string msg =
        message_of("n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
                   "grid.mode = axisymmetric\ninitial.constant = 1\n");
    CHECK(msg.find("missing required key 'grid.n_theta'") !=
          std::string::npos);
  }
  SUBCASE("duplicate key") {
    const std::string msg = message_of("n = 2\nn = 3\n");
    CHECK(msg.find("duplicate key 'n'") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
  SUBCASE("malformed line") {
    const std::string msg = message_of("n 2\n");
    CHECK(msg.find("expected 'key = value'") != std::string::npos);
  }
  SUBCASE("k outside [1, n]") {
    const std::string msg =
        message_of("n = 2\nk = 3\nalpha = 5\nbeta = 1\n"
                   "grid.mode = axisymmetric\ngrid.n_theta = 33\n"
                   "initial.constant = 1\n");
    CHECK(msg.find("k must lie in [1, n]") != std::string::npos);
  }
}

TEST_CASE("initial-data flavors are mutually exclusive and complete") {
  const char* base =
      "n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\n";
  SUBCASE("two flavors at once") {
    const std::string msg = message_of(
        (std::string(base) +
         "initial.constant = 1\ninitial.node_values = r.txt\n")
            .c_str());
    CHECK(msg.find("exactly one of") != std::string::npos);
  }
  SUBCASE("no flavor") {
    const std::string msg = message_of(base);
    CHECK(msg.find("exactly one of") != std::string::npos);
  }
  SUBCASE("harmonic flavor with the rhat keyword") {
    const RunConfig cfg = parse_config(
        (std::string(base) +
         "initial.harmonic.base = rhat\ninitial.harmonic.eps = 0.1\n"
         "initial.harmonic.l = 2\ninitial.harmonic.m = 0\n")
            .c_str());
    CHECK(cfg.initial_kind == InitialKind::Harmonic);
    CHECK(cfg.harmonic.base_is_rhat);
    CHECK(cfg.harmonic.eps == 0.1);
    CHECK(cfg.harmonic.l == 2);
    CHECK(cfg.harmonic.m == 0);
  }
  SUBCASE("node values flavor") {
    const RunConfig cfg = parse_config(
        (std::string(base) + "initial.node_values = /tmp/values.txt\n")
            .c_str());
    CHECK(cfg.initial_kind == InitialKind::NodeValues);
    CHECK(cfg.node_values_path == "/tmp/values.txt");
  }
}

TEST_CASE("latlon grids take n_phi; axisymmetric grids must not") {
  const RunConfig cfg = parse_config(
      "n = 2\nk = 2\nalpha = 5\nbeta = 1\n"
      "grid.mode = latlon\ngrid.n_theta = 48\ngrid.n_phi = 96\n"
      "initial.constant = 1\nmode = uniformly_convex\n");
  CHECK(cfg.grid.mode == GridMode::LatLon2D);
  CHECK(cfg.grid.n_phi == 96);
  CHECK(cfg.mode == CheckMode::UniformlyConvex);

  const std::string msg = message_of(
      "n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\ngrid.n_phi = 8\n"
      "initial.constant = 1\n");
  CHECK(msg.find("grid.n_phi only applies") != std::string::npos);
}

TEST_CASE("overrides replace file entries and are validated") {
  std::vector<std::string> overrides{"alpha=4", "stopping.t_max=7"};
  const RunConfig cfg = parse_config(kMinimal, overrides);
  CHECK(cfg.params.alpha == 4.0);
  CHECK(cfg.run.t_max == 7.0);

  std::vector<std::string> bad{"beta=-1"};
  const std::string msg = message_of(kMinimal, bad);
  CHECK(msg.find("beta must be positive") != std::string::npos);
  CHECK(msg.find("override") != std::string::npos);

  std::vector<std::string> unknown{"grit.mode=latlon"};
  CHECK(message_of(kMinimal, unknown).find("unknown key 'grit.mode'") !=
        std::string::npos);
}

TEST_CASE("sweep lists parse as comma-separated exponents") {
  const RunConfig cfg = parse_config(
      "n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\ninitial.constant = 1\n"
      "sweep.alpha = 2.5, 3, 4\nsweep.beta = 0.5,1\n"
      "output.csv_path = table.csv\n");
  CHECK(cfg.sweep.alphas == std::vector<double>{2.5, 3.0, 4.0});
  CHECK(cfg.sweep.betas == std::vector<double>{0.5, 1.0});
  CHECK(cfg.output.csv_path == "table.csv");
}

TEST_CASE("stopping and integrator keys land in the run parameters") {
  const RunConfig cfg = parse_config(
      "n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\ninitial.constant = 1\n"
      "stopping.tol_grad = 1e-9\nstopping.tol_r = 1e-7\n"
      "stopping.t_max = 42\nintegrator.safety = 0.1\n"
      "integrator.record_stride = 5\n");
  CHECK(cfg.run.tol_grad == 1e-9);
  CHECK(cfg.run.tol_radius == 1e-7);
  CHECK(cfg.run.t_max == 42.0);
  CHECK(cfg.run.safety == 0.1);
  CHECK(cfg.run.record_stride == 5);

  CHECK(message_of("n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
                   "grid.mode = axisymmetric\ngrid.n_theta = 33\n"
                   "initial.constant = 1\nintegrator.safety = 1.5\n")
            .find("integrator.safety") != std::string::npos);
}

TEST_CASE("boundary exponents parse but sit outside the theorem window") {
  std::vector<std::string> overrides{"alpha=2"};
  const RunConfig cfg = parse_config(kMinimal, overrides);  // alpha = k + beta
  CHECK_FALSE(cfg.params.in_convergence_regime());
}
