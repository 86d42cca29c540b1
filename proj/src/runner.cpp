#include "hypflow/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include "hypflow/harmonics.hpp"
#include "json.hpp"

namespace hypflow {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "t,r_min,r_max,pinching,grad_vphi_sq_max,sigma_k_min,sigma_k_max,"
    "kappa_min,kappa_max,u_min,u_max,osc,dist_rhat";

std::string csv_row(const DiagnosticsRecord& rec) {
  std::string row = fmt17(rec.t);
  for (double v : {rec.r_min, rec.r_max, rec.pinching, rec.grad_vphi_sq_max,
                   rec.sigma_k_min, rec.sigma_k_max, rec.kappa_min,
                   rec.kappa_max, rec.u_min, rec.u_max, rec.osc,
                   rec.dist_rhat}) {
    row += ',';
    row += fmt17(v);
  }
  return row;
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Converged:
      return "Converged";
    case RunStatus::TimeLimit:
      return "TimeLimit";
    case RunStatus::ConeExit:
      return "ConeExit";
  }
  return "Unknown";
}

std::string node_location(const Grid& grid, int node) {
  const int j = node / grid.n_phi();
  const int i = node % grid.n_phi();
  return "node " + std::to_string(node) + " (theta=" +
         fmt17(grid.theta(j)) + ", azimuth=" + fmt17(grid.phi(i)) + ")";
}

ScalarField load_node_values(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read initial.node_values file '" + path + "'");
  }
  ScalarField r;
  double v = 0.0;
  while (in >> v) r.push_back(v);
  if (!in.eof()) {
    throw ConfigError("initial.node_values file '" + path +
                      "' contains a malformed number near entry " +
                      std::to_string(r.size()));
  }
  if (static_cast<int>(r.size()) != grid.node_count()) {
    throw ConfigError("initial.node_values file '" + path + "' holds " +
                      std::to_string(r.size()) + " values but the grid has " +
                      std::to_string(grid.node_count()) + " nodes");
  }
  return r;
}

void validate_initial(const RunConfig& cfg, const Grid& grid,
                      const ScalarField& r) {
  // Positivity and finiteness first, naming the worst node (non-finite
  // values sort below everything).
  const auto badness = [&](int node) {
    const double v = r[node];
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  int worst = 0;
  for (int node = 1; node < grid.node_count(); ++node) {
    if (badness(node) < badness(worst)) worst = node;
  }
  if (!(r[worst] > 0.0) || !std::isfinite(r[worst])) {
    throw InitRejected("initial surface rejected: radius must be positive "
                       "and finite, worst at " +
                       node_location(grid, worst) + ", r=" + fmt17(r[worst]));
  }
  if (cfg.mode == CheckMode::Unchecked) return;

  const SurfaceGeometry geo =
      geometry(grid, r, cfg.params.k, ConePolicy::Permissive);
  if (cfg.mode == CheckMode::MeanConvex) {
    int arg = 0;
    double lo = geo.kappa_lo[0] + geo.kappa_hi[0];
    for (int node = 1; node < grid.node_count(); ++node) {
      const double s1 = geo.kappa_lo[node] + geo.kappa_hi[node];
      if (s1 < lo) {
        lo = s1;
        arg = node;
      }
    }
    if (!(lo > 0.0)) {
      throw InitRejected("initial surface rejected: not mean convex, worst "
                         "at " + node_location(grid, arg) +
                         ", sigma_1=" + fmt17(lo));
    }
  } else {
    int arg = 0;
    double lo = geo.kappa_lo[0];
    for (int node = 1; node < grid.node_count(); ++node) {
      if (geo.kappa_lo[node] < lo) {
        lo = geo.kappa_lo[node];
        arg = node;
      }
    }
    if (!(lo > 0.0)) {
      throw InitRejected("initial surface rejected: not uniformly convex, "
                         "worst at " + node_location(grid, arg) +
                         ", kappa_min=" + fmt17(lo));
    }
  }
}

nlohmann::json record_json(const DiagnosticsRecord& rec) {
  return nlohmann::json{{"t", rec.t},
                        {"r_min", rec.r_min},
                        {"r_max", rec.r_max},
                        {"pinching", rec.pinching},
                        {"grad_vphi_sq_max", rec.grad_vphi_sq_max},
                        {"sigma_k_min", rec.sigma_k_min},
                        {"sigma_k_max", rec.sigma_k_max},
                        {"kappa_min", rec.kappa_min},
                        {"kappa_max", rec.kappa_max},
                        {"u_min", rec.u_min},
                        {"u_max", rec.u_max},
                        {"osc", rec.osc},
                        {"dist_rhat", rec.dist_rhat}};
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Grid make_grid(const RunConfig& cfg) {
  if (cfg.grid.mode == GridMode::Axisymmetric1D) {
    return Grid::axisymmetric(cfg.grid.n_theta);
  }
  return Grid::latlon(cfg.grid.n_theta, cfg.grid.n_phi);
}

ScalarField make_initial(const RunConfig& cfg, const Grid& grid) {
  if (cfg.params.n != 2) {
    throw ConfigError("initial surfaces require n = 2 (the grid covers a "
                      "2-sphere); n=" + std::to_string(cfg.params.n));
  }
  ScalarField r(static_cast<std::size_t>(grid.node_count()), 0.0);
  switch (cfg.initial_kind) {
    case InitialKind::Constant: {
      for (double& v : r) v = cfg.initial_constant;
      break;
    }
    case InitialKind::Harmonic: {
      double base = cfg.harmonic.base;
      if (cfg.harmonic.base_is_rhat) {
        if (!(cfg.params.alpha > cfg.params.k + cfg.params.beta)) {
          throw ConfigError("initial.harmonic.base = rhat requires a "
                            "stationary radius, i.e. alpha > k + beta");
        }
        base = equilibrium_radius(cfg.params);
      }
      if (grid.mode() == GridMode::Axisymmetric1D && cfg.harmonic.m != 0) {
        throw ConfigError("initial.harmonic.m must be 0 on an axisymmetric "
                          "grid, got m=" + std::to_string(cfg.harmonic.m));
      }
      for (int j = 0; j < grid.n_theta(); ++j) {
        for (int i = 0; i < grid.n_phi(); ++i) {
          const double y = real_spherical_harmonic(
              cfg.harmonic.l, cfg.harmonic.m, grid.theta(j), grid.phi(i));
          r[grid.index(j, i)] = base * (1.0 + cfg.harmonic.eps * y);
        }
      }
      break;
    }
    case InitialKind::NodeValues: {
      r = load_node_values(cfg.node_values_path, grid);
      break;
    }
  }
  validate_initial(cfg, grid, r);
  return r;
}

int exit_code_for(RunStatus status, bool checks_pass) {
  switch (status) {
    case RunStatus::Converged:
      return checks_pass ? 0 : 4;
    case RunStatus::ConeExit:
      return 2;
    case RunStatus::TimeLimit:
      return 3;
  }
  return 1;
}

RunOutputs execute_run(const RunConfig& cfg) {
  const FlowParams& p = cfg.params;
  const Grid grid = make_grid(cfg);
  const ScalarField r0 = make_initial(cfg, grid);

  RunOutputs out;
  const bool has_target = p.alpha > p.k + p.beta;
  if (has_target) {
    out.r_hat_exact = equilibrium_radius(p);
    out.r_hat_paper = equilibrium_radius_normalized(p);
  }

  std::ofstream csv;
  if (!cfg.output.csv_path.empty()) {
    csv.open(cfg.output.csv_path);
    if (!csv) {
      throw std::runtime_error("cannot write CSV file '" +
                               cfg.output.csv_path + "'");
    }
    csv << kCsvHeader << '\n';
  }

  const auto observer = [&](const StepObservation& obs) {
    out.trajectory.push_back(
        record(obs.t, obs.r, obs.geometry, out.r_hat_exact));
    if (csv.is_open()) csv << csv_row(out.trajectory.back()) << '\n';
  };
  out.result = run(grid, r0, p, cfg.run, observer);
  if (csv.is_open()) csv.close();

  if (has_target && !out.trajectory.empty()) {
    out.decay_rate = fit_decay_rate(
        out.trajectory,
        [](const DiagnosticsRecord& rec) { return rec.dist_rhat; });
    const double h = (grid.mode() == GridMode::LatLon2D)
                         ? std::max(grid.h_theta(), grid.h_phi())
                         : grid.h_theta();
    out.report.add(verify_c0(out.trajectory, *out.r_hat_exact, h));
    if (p.in_convergence_regime()) {
      out.report.add(verify_gradient_monotone(out.trajectory));
      if (out.decay_rate) {
        out.report.add(CheckResult{"decay_rate_negative",
                                   *out.decay_rate < 0.0, -*out.decay_rate,
                                   out.trajectory.back().t});
      }
    }
    if (cfg.mode != CheckMode::Unchecked) {
      const BoundsMode bm = (cfg.mode == CheckMode::UniformlyConvex)
                                ? BoundsMode::UniformlyConvex
                                : BoundsMode::MeanConvex;
      VerificationReport suite =
          verify_bounds_suite(out.trajectory, bm, p, *out.r_hat_exact);
      for (CheckResult& c : suite.checks) out.report.add(std::move(c));
    }
  }
  out.exit_code = exit_code_for(out.result.status, out.report.all_pass());

  nlohmann::json j;
  j["status"] = status_name(out.result.status);
  j["t_final"] = out.result.t_final;
  j["steps"] = out.result.steps;
  j["theorem_regime"] = p.in_convergence_regime();
  j["near_cone_boundary"] = out.result.near_cone_boundary;
  j["message"] = out.result.message;
  j["r_hat_exact"] = optional_json(out.r_hat_exact);
  j["r_hat_paper"] = optional_json(out.r_hat_paper);
  j["decay_rate"] = optional_json(out.decay_rate);
  if (!out.trajectory.empty()) {
    j["final"] = record_json(out.trajectory.back());
  } else {
    j["final"] = nullptr;
  }
  nlohmann::json checks = nlohmann::json::object();
  for (const CheckResult& c : out.report.checks) {
    checks[c.name] = nlohmann::json{{"pass", c.pass},
                                    {"worst_margin", c.worst_margin},
                                    {"worst_time", c.worst_time}};
  }
  j["checks"] = checks;
  out.json = j.dump(2) + "\n";

  if (!cfg.output.json_path.empty()) {
    std::ofstream js(cfg.output.json_path);
    if (!js) {
      throw std::runtime_error("cannot write JSON file '" +
                               cfg.output.json_path + "'");
    }
    js << out.json;
  }
  return out;
}

int sweep_command(const RunConfig& cfg) {
  if (cfg.sweep.alphas.empty() || cfg.sweep.betas.empty()) {
    throw ConfigError("sweep requires sweep.alpha and sweep.beta lists");
  }
  if (cfg.output.csv_path.empty()) {
    throw ConfigError("sweep requires output.csv_path for the summary table");
  }
  std::ofstream table(cfg.output.csv_path);
  if (!table) {
    throw std::runtime_error("cannot write sweep table '" +
                             cfg.output.csv_path + "'");
  }
  table << "alpha,beta,status,final_radius,decay_rate\n";
  for (double a : cfg.sweep.alphas) {
    for (double b : cfg.sweep.betas) {
      RunConfig cell = cfg;
      cell.params.alpha = a;
      cell.params.beta = b;
      cell.output = OutputConfig{};
      cell.sweep = SweepConfig{};
      const RunOutputs res = execute_run(cell);
      const DiagnosticsRecord& last = res.trajectory.back();
      const double radius = 0.5 * (last.r_min + last.r_max);
      table << fmt17(a) << ',' << fmt17(b) << ','
            << status_name(res.result.status) << ',' << fmt17(radius) << ','
            << (res.decay_rate ? fmt17(*res.decay_rate)
                               : std::string("nan"))
            << '\n';
    }
  }
  return 0;
}

}  // namespace hypflow
