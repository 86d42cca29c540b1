#include "hypflow/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hypflow/config.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/harmonics.hpp"

using namespace hypflow;

namespace {

RunConfig base_config() {
  return parse_config(
      "n = 2\nk = 1\nalpha = 3\nbeta = 1\n"
      "grid.mode = axisymmetric\ngrid.n_theta = 33\n"
      "initial.constant = 1.0\n");
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

// Writes 1 + amp cos(4 theta) on an axisymmetric grid to a node file.
std::string write_wrinkle(const Grid& g, double amp, const std::string& name) {
  const std::filesystem::path path = temp_file(name);
  std::ofstream out(path);
  for (int j = 0; j < g.n_theta(); ++j) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g\n",
                  1.0 + amp * std::cos(4.0 * g.theta(j)));
    out << buf;
  }
  return path.string();
}

}  // namespace

TEST_CASE("make_grid builds the configured layout") {
  RunConfig cfg = base_config();
  CHECK(make_grid(cfg).mode() == GridMode::Axisymmetric1D);
  CHECK(make_grid(cfg).n_theta() == 33);
  cfg.grid.mode = GridMode::LatLon2D;
  cfg.grid.n_theta = 24;
  cfg.grid.n_phi = 48;
  const Grid g = make_grid(cfg);
  CHECK(g.mode() == GridMode::LatLon2D);
  CHECK(g.node_count() == 24 * 48);
}

TEST_CASE("constant and harmonic initial surfaces") {
  RunConfig cfg = base_config();
  const Grid g = make_grid(cfg);

  SUBCASE("constant fills every node") {
    const ScalarField r = make_initial(cfg, g);
    for (double v : r) CHECK(v == 1.0);
  }

  SUBCASE("harmonic with eps = 0 collapses to the base sphere") {
    cfg.initial_kind = InitialKind::Harmonic;
    cfg.harmonic = HarmonicInit{1.2, false, 0.0, 3, 0};
    const ScalarField r = make_initial(cfg, g);
    for (double v : r) CHECK(v == 1.2);
  }

  SUBCASE("degree-2 zonal harmonic matches its closed form") {
    cfg.initial_kind = InitialKind::Harmonic;
    cfg.harmonic = HarmonicInit{0.9, false, 0.1, 2, 0};
    const ScalarField r = make_initial(cfg, g);
    const double c_norm = 0.25 * std::sqrt(5.0 / 3.14159265358979323846);
    for (int j = 0; j < g.n_theta(); ++j) {
      const double c = std::cos(g.theta(j));
      const double want = 0.9 * (1.0 + 0.1 * c_norm * (3.0 * c * c - 1.0));
      CHECK(r[g.index(j)] == doctest::Approx(want).epsilon(1e-14));
    }
  }

  SUBCASE("base = rhat centers the perturbation on the stationary sphere") {
    cfg.initial_kind = InitialKind::Harmonic;
    cfg.harmonic = HarmonicInit{0.0, true, 0.0, 2, 0};
    const ScalarField r = make_initial(cfg, g);
    const double r_hat = equilibrium_radius(cfg.params);
    for (double v : r) CHECK(v == r_hat);
  }

  SUBCASE("base = rhat without a stationary radius is a config error") {
    cfg.params.alpha = 2.0;  // alpha = k + beta: no balance root
    cfg.initial_kind = InitialKind::Harmonic;
    cfg.harmonic = HarmonicInit{0.0, true, 0.1, 2, 0};
    CHECK_THROWS_AS(make_initial(cfg, g), ConfigError);
  }

  SUBCASE("nonzonal harmonics need a latlon grid") {
    cfg.initial_kind = InitialKind::Harmonic;
    cfg.harmonic = HarmonicInit{1.0, false, 0.05, 2, 1};
    CHECK_THROWS_AS(make_initial(cfg, g), ConfigError);
    cfg.grid.mode = GridMode::LatLon2D;
    cfg.grid.n_theta = 16;
    cfg.grid.n_phi = 32;
    const Grid ll = make_grid(cfg);
    const ScalarField r = make_initial(cfg, ll);
    CHECK(r.size() == static_cast<std::size_t>(ll.node_count()));
  }
}

TEST_CASE("node-value files load verbatim and are screened") {
  RunConfig cfg = base_config();
  const Grid g = make_grid(cfg);
  cfg.initial_kind = InitialKind::NodeValues;

  SUBCASE("round trip") {
    cfg.node_values_path = write_wrinkle(g, 0.05, "hypflow_nodes_ok.txt");
    const ScalarField r = make_initial(cfg, g);
    for (int j = 0; j < g.n_theta(); ++j) {
      CHECK(r[g.index(j)] ==
            doctest::Approx(1.0 + 0.05 * std::cos(4.0 * g.theta(j)))
                .epsilon(1e-16));
    }
  }

  SUBCASE("wrong count") {
    const std::filesystem::path path = temp_file("hypflow_nodes_short.txt");
    std::ofstream(path) << "1.0 1.1 1.2\n";
    cfg.node_values_path = path.string();
    CHECK_THROWS_AS(make_initial(cfg, g), ConfigError);
  }

  SUBCASE("malformed number") {
    const std::filesystem::path path = temp_file("hypflow_nodes_bad.txt");
    std::ofstream(path) << "1.0 1.1 pancake 1.2\n";
    cfg.node_values_path = path.string();
    CHECK_THROWS_AS(make_initial(cfg, g), ConfigError);
  }

  SUBCASE("missing file") {
    cfg.node_values_path = "/nonexistent/nodes.txt";
    CHECK_THROWS_AS(make_initial(cfg, g), ConfigError);
  }
}

TEST_CASE("initial screening rejects by mode, naming the worst node") {
  RunConfig cfg = base_config();
  const Grid g = make_grid(cfg);  // 33 nodes; wrinkles built on this grid
  cfg.initial_kind = InitialKind::NodeValues;

  SUBCASE("positivity: a negative node is always fatal") {
    const std::filesystem::path path = temp_file("hypflow_nodes_neg.txt");
    {
      std::ofstream out(path);
      for (int j = 0; j < g.n_theta(); ++j) {
        out << (j == 5 ? -0.25 : 1.0) << "\n";
      }
    }
    cfg.node_values_path = path.string();
    cfg.mode = CheckMode::Unchecked;
    try {
      make_initial(cfg, g);
      FAIL("expected InitRejected");
    } catch (const InitRejected& e) {
      const std::string msg = e.what();
      CHECK(msg.find("node 5") != std::string::npos);
      CHECK(msg.find("positive") != std::string::npos);
    }
  }

  // 1 + 0.1 cos(4 theta) is mean convex but not uniformly convex
  // (min sigma_1 = +1.26, min kappa ~ -0.12 on this grid).
  SUBCASE("mild wrinkle: mean convex yes, uniformly convex no") {
    cfg.node_values_path = write_wrinkle(g, 0.1, "hypflow_nodes_mild.txt");
    cfg.mode = CheckMode::MeanConvex;
    CHECK(make_initial(cfg, g).size() ==
          static_cast<std::size_t>(g.node_count()));
    cfg.mode = CheckMode::UniformlyConvex;
    try {
      make_initial(cfg, g);
      FAIL("expected InitRejected");
    } catch (const InitRejected& e) {
      const std::string msg = e.what();
      CHECK(msg.find("uniformly convex") != std::string::npos);
      CHECK(msg.find("node") != std::string::npos);
      CHECK(msg.find("kappa_min") != std::string::npos);
    }
  }

  // 1 + 0.25 cos(4 theta) is not even mean convex (min sigma_1 = -2.7).
  SUBCASE("strong wrinkle fails the mean-convexity screen too") {
    cfg.node_values_path = write_wrinkle(g, 0.25, "hypflow_nodes_strong.txt");
    cfg.mode = CheckMode::MeanConvex;
    CHECK_THROWS_AS(make_initial(cfg, g), InitRejected);
    cfg.mode = CheckMode::Unchecked;  // positivity only: accepted
    CHECK(make_initial(cfg, g).size() ==
          static_cast<std::size_t>(g.node_count()));
  }
}

TEST_CASE("exit codes follow the batch contract") {
  CHECK(exit_code_for(RunStatus::Converged, true) == 0);
  CHECK(exit_code_for(RunStatus::Converged, false) == 4);
  CHECK(exit_code_for(RunStatus::ConeExit, true) == 2);
  CHECK(exit_code_for(RunStatus::ConeExit, false) == 2);
  CHECK(exit_code_for(RunStatus::TimeLimit, true) == 3);
  CHECK(exit_code_for(RunStatus::TimeLimit, false) == 3);
}

TEST_CASE("execute_run on an already-stationary sphere: immediate success") {
  RunConfig cfg = base_config();
  cfg.initial_kind = InitialKind::Harmonic;
  cfg.harmonic = HarmonicInit{0.0, true, 0.0, 2, 0};
  const RunOutputs out = execute_run(cfg);
  CHECK(out.result.status == RunStatus::Converged);
  CHECK(out.result.steps == 0);
  CHECK(out.exit_code == 0);
  CHECK(out.trajectory.size() == 1);
  REQUIRE(out.r_hat_exact.has_value());
  CHECK(*out.r_hat_exact == doctest::Approx(0.7218177375894052).epsilon(1e-12));
  CHECK_FALSE(out.decay_rate.has_value());  // one record: no signal
  CHECK(out.report.find("c0_sandwich") != nullptr);
  CHECK(out.report.find("decay_rate_negative") == nullptr);
  CHECK(out.report.all_pass());
}

TEST_CASE("execute_run writes the documented CSV and JSON artifacts") {
  RunConfig cfg = base_config();
  cfg.initial_kind = InitialKind::Harmonic;
  cfg.harmonic = HarmonicInit{0.0, true, 0.05, 2, 0};
  cfg.run.t_max = 5.0;
  cfg.run.record_stride = 10;
  cfg.output.csv_path = temp_file("hypflow_run.csv").string();
  cfg.output.json_path = temp_file("hypflow_run.json").string();

  const RunOutputs out = execute_run(cfg);
  CHECK(out.result.status == RunStatus::Converged);
  CHECK(out.exit_code == 0);

  std::ifstream csv(cfg.output.csv_path);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "t,r_min,r_max,pinching,grad_vphi_sq_max,sigma_k_min,sigma_k_max,"
        "kappa_min,kappa_max,u_min,u_max,osc,dist_rhat");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == out.trajectory.size());

  std::ifstream js(cfg.output.json_path);
  REQUIRE(js.good());
  std::string json((std::istreambuf_iterator<char>(js)),
                   std::istreambuf_iterator<char>());
  CHECK(json == out.json);
  for (const char* key :
       {"\"status\"", "\"t_final\"", "\"r_hat_exact\"", "\"r_hat_paper\"",
        "\"decay_rate\"", "\"checks\"", "\"final\"", "\"theorem_regime\""}) {
    CAPTURE(key);
    CHECK(json.find(key) != std::string::npos);
  }
  CHECK(json.find("\"status\": \"Converged\"") != std::string::npos);

  // Determinism: the same configuration reproduces both artifacts byte for
  // byte.
  std::ifstream first_csv(cfg.output.csv_path);
  const std::string csv_before((std::istreambuf_iterator<char>(first_csv)),
                               std::istreambuf_iterator<char>());
  const RunOutputs again = execute_run(cfg);
  CHECK(again.json == out.json);
  std::ifstream second_csv(cfg.output.csv_path);
  const std::string csv_after((std::istreambuf_iterator<char>(second_csv)),
                              std::istreambuf_iterator<char>());
  CHECK(csv_after == csv_before);
}

TEST_CASE("execute_run without a stationary target runs on the clock") {
  RunConfig cfg = base_config();
  cfg.params.alpha = 2.0;  // alpha = k + beta: no target, no checks
  cfg.run.t_max = 0.02;
  const RunOutputs out = execute_run(cfg);
  CHECK(out.result.status == RunStatus::TimeLimit);
  CHECK(out.exit_code == 3);
  CHECK_FALSE(out.r_hat_exact.has_value());
  CHECK_FALSE(out.r_hat_paper.has_value());
  CHECK(out.report.checks.empty());
  CHECK(out.json.find("\"r_hat_exact\": null") != std::string::npos);
  CHECK(out.json.find("\"decay_rate\": null") != std::string::npos);
  CHECK(std::isnan(out.trajectory.back().dist_rhat));
}

TEST_CASE("sweep writes one summary row per exponent cell") {
  RunConfig cfg = base_config();
  cfg.initial_kind = InitialKind::Harmonic;
  cfg.harmonic = HarmonicInit{0.0, true, 0.05, 2, 0};
  cfg.run.t_max = 20.0;
  cfg.sweep.alphas = {3.0, 4.0};
  cfg.sweep.betas = {1.0};
  cfg.output.csv_path = temp_file("hypflow_sweep.csv").string();

  CHECK(sweep_command(cfg) == 0);
  std::ifstream table(cfg.output.csv_path);
  REQUIRE(table.good());
  std::string header;
  std::getline(table, header);
  CHECK(header == "alpha,beta,status,final_radius,decay_rate");
  std::vector<std::string> rows;
  for (std::string line; std::getline(table, line);) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].find("3,1,Converged,") != std::string::npos);
  CHECK(rows[1].find("4,1,Converged,") != std::string::npos);

  RunConfig missing = cfg;
  missing.sweep.alphas.clear();
  CHECK_THROWS_AS(sweep_command(missing), ConfigError);
  RunConfig nopath = cfg;
  nopath.output.csv_path.clear();
  CHECK_THROWS_AS(sweep_command(nopath), ConfigError);
}
