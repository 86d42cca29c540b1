// Python bindings for the curvature-flow laboratory: the symmetric-function
// layer, sphere grids and surface geometry, the flow integrator (returning
// a scalar-diagnostics trajectory), the verification suites, and the
// config-driven batch runner.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "hypflow/config.hpp"
#include "hypflow/diagnostics.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/harmonics.hpp"
#include "hypflow/hypgeom.hpp"
#include "hypflow/runner.hpp"
#include "hypflow/sphgrid.hpp"
#include "hypflow/symfunc.hpp"

namespace py = pybind11;
using namespace hypflow;

namespace {

// run() hands the observer references into live integrator state; for
// Python, collect value snapshots instead and hand back the whole
// trajectory next to the result.
std::pair<FlowResult, Trajectory> run_collect(const Grid& grid,
                                              const ScalarField& r0,
                                              const FlowParams& p,
                                              const RunParams& rp) {
  Trajectory traj;
  std::optional<double> r_hat;
  if (p.alpha > p.k + p.beta) r_hat = equilibrium_radius(p);
  FlowResult res = run(grid, r0, p, rp, [&](const StepObservation& obs) {
    traj.push_back(record(obs.t, obs.r, obs.geometry, r_hat));
  });
  return {std::move(res), std::move(traj)};
}

}  // namespace

PYBIND11_MODULE(_hypflow, m) {
  m.doc() = "numerical laboratory for fully nonlinear curvature flows of "
            "star-shaped surfaces in hyperbolic 3-space";

  // --- symmetric functions ---
  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def(
      "sigma",
      [](int k, const std::vector<double>& lam) { return sigma(k, lam); },
      py::arg("k"), py::arg("eigenvalues"));
  m.def(
      "sigma_grad",
      [](int k, const std::vector<double>& lam) { return sigma_grad(k, lam); },
      py::arg("k"), py::arg("eigenvalues"));
  m.def(
      "in_cone",
      [](int k, const std::vector<double>& lam) { return in_cone(k, lam); },
      py::arg("k"), py::arg("eigenvalues"));
  m.def(
      "maclaurin_gap",
      [](int l, int mm, const std::vector<double>& lam) {
        return maclaurin_gap(l, mm, lam);
      },
      py::arg("l"), py::arg("m"), py::arg("eigenvalues"));

  // --- radial coordinate change ---
  m.def("vphi_of_radius", &vphi_of_radius, py::arg("r"));
  m.def("radius_of_vphi", &radius_of_vphi, py::arg("x"));
  m.def("real_spherical_harmonic", &real_spherical_harmonic, py::arg("l"),
        py::arg("m"), py::arg("theta"), py::arg("phi"));

  // --- grids ---
  py::enum_<GridMode>(m, "GridMode")
      .value("Axisymmetric1D", GridMode::Axisymmetric1D)
      .value("LatLon2D", GridMode::LatLon2D);
  py::class_<Grid>(m, "Grid")
      .def_static("axisymmetric", &Grid::axisymmetric, py::arg("n_theta"))
      .def_static("latlon", &Grid::latlon, py::arg("n_theta"),
                  py::arg("n_phi"))
      .def_property_readonly("mode", &Grid::mode)
      .def_property_readonly("n_theta", &Grid::n_theta)
      .def_property_readonly("n_phi", &Grid::n_phi)
      .def_property_readonly("node_count", &Grid::node_count)
      .def_property_readonly("h_theta", &Grid::h_theta)
      .def_property_readonly("h_phi", &Grid::h_phi)
      .def("theta", &Grid::theta, py::arg("j"))
      .def("phi", &Grid::phi, py::arg("i"))
      .def("index", &Grid::index, py::arg("j"), py::arg("i") = 0);

  // --- surface geometry ---
  py::class_<SurfaceGeometry>(m, "SurfaceGeometry")
      .def_readonly("kappa_lo", &SurfaceGeometry::kappa_lo)
      .def_readonly("kappa_hi", &SurfaceGeometry::kappa_hi)
      .def_readonly("sigma_k", &SurfaceGeometry::sigma_k)
      .def_readonly("support", &SurfaceGeometry::support)
      .def_readonly("omega", &SurfaceGeometry::omega)
      .def_readonly("grad_vphi_sq", &SurfaceGeometry::grad_vphi_sq);
  py::enum_<ConePolicy>(m, "ConePolicy")
      .value("Strict", ConePolicy::Strict)
      .value("Permissive", ConePolicy::Permissive);
  m.def("geometry", &geometry, py::arg("grid"), py::arg("r"), py::arg("k"),
        py::arg("policy") = ConePolicy::Strict);

  // --- flow parameters and the scalar reduction ---
  py::class_<FlowParams>(m, "FlowParams")
      .def(py::init([](int n, int k, double alpha, double beta) {
             FlowParams p;
             p.n = n;
             p.k = k;
             p.alpha = alpha;
             p.beta = beta;
             return p;
           }),
           py::arg("n") = 2, py::arg("k") = 1, py::arg("alpha") = 3.0,
           py::arg("beta") = 1.0)
      .def_readwrite("n", &FlowParams::n)
      .def_readwrite("k", &FlowParams::k)
      .def_readwrite("alpha", &FlowParams::alpha)
      .def_readwrite("beta", &FlowParams::beta)
      .def("gamma", &FlowParams::gamma)
      .def("in_convergence_regime", &FlowParams::in_convergence_regime);
  m.def("equilibrium_function", &equilibrium_function, py::arg("radius"),
        py::arg("params"));
  m.def("equilibrium_radius", &equilibrium_radius, py::arg("params"));
  m.def("equilibrium_radius_normalized", &equilibrium_radius_normalized,
        py::arg("params"));
  m.def("sphere_ode_rhs", &sphere_ode_rhs, py::arg("radius"),
        py::arg("params"));
  m.def(
      "sphere_ode_integrate",
      [](double r0, double dt, double t_end, const FlowParams& p) {
        std::vector<std::pair<double, double>> out;
        for (const OdeSample& s : sphere_ode_integrate(r0, dt, t_end, p)) {
          out.emplace_back(s.t, s.radius);
        }
        return out;
      },
      py::arg("radius0"), py::arg("dt"), py::arg("t_end"), py::arg("params"));

  // --- the PDE integrator ---
  py::enum_<RunStatus>(m, "RunStatus")
      .value("Converged", RunStatus::Converged)
      .value("TimeLimit", RunStatus::TimeLimit)
      .value("ConeExit", RunStatus::ConeExit);
  py::class_<RunParams>(m, "RunParams")
      .def(py::init<>())
      .def_readwrite("t_max", &RunParams::t_max)
      .def_readwrite("tol_grad", &RunParams::tol_grad)
      .def_readwrite("tol_radius", &RunParams::tol_radius)
      .def_readwrite("dt_cap", &RunParams::dt_cap)
      .def_readwrite("safety", &RunParams::safety)
      .def_readwrite("record_stride", &RunParams::record_stride);
  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("status", &FlowResult::status)
      .def_readonly("t_final", &FlowResult::t_final)
      .def_readonly("r_final", &FlowResult::r_final)
      .def_readonly("steps", &FlowResult::steps)
      .def_readonly("near_cone_boundary", &FlowResult::near_cone_boundary)
      .def_readonly("message", &FlowResult::message);
  m.def("stable_dt", &stable_dt, py::arg("grid"), py::arg("r"),
        py::arg("params"), py::arg("safety") = 0.2);
  m.def("flow_step", &flow_step, py::arg("grid"), py::arg("r"), py::arg("dt"),
        py::arg("params"));
  m.def("run", &run_collect, py::arg("grid"), py::arg("r0"), py::arg("params"),
        py::arg("run_params") = RunParams{},
        "Integrate the flow; returns (FlowResult, list of records)");

  // --- diagnostics ---
  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("t", &DiagnosticsRecord::t)
      .def_readonly("r_min", &DiagnosticsRecord::r_min)
      .def_readonly("r_max", &DiagnosticsRecord::r_max)
      .def_readonly("pinching", &DiagnosticsRecord::pinching)
      .def_readonly("grad_vphi_sq_max", &DiagnosticsRecord::grad_vphi_sq_max)
      .def_readonly("sigma_k_min", &DiagnosticsRecord::sigma_k_min)
      .def_readonly("sigma_k_max", &DiagnosticsRecord::sigma_k_max)
      .def_readonly("kappa_min", &DiagnosticsRecord::kappa_min)
      .def_readonly("kappa_max", &DiagnosticsRecord::kappa_max)
      .def_readonly("u_min", &DiagnosticsRecord::u_min)
      .def_readonly("u_max", &DiagnosticsRecord::u_max)
      .def_readonly("osc", &DiagnosticsRecord::osc)
      .def_readonly("dist_rhat", &DiagnosticsRecord::dist_rhat);
  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("worst_margin", &CheckResult::worst_margin)
      .def_readonly("worst_time", &CheckResult::worst_time);
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("checks", &VerificationReport::checks)
      .def("all_pass", &VerificationReport::all_pass);
  m.def("identity_suite", &identity_suite, py::arg("samples"),
        py::arg("seed"));

  // --- config-driven batch runs ---
  m.def(
      "execute_config",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        const RunConfig cfg = parse_config(text, overrides);
        RunOutputs out = execute_run(cfg);
        return py::make_tuple(out.exit_code, out.json);
      },
      py::arg("text"), py::arg("overrides") = std::vector<std::string>{},
      "Parse a config document, run it, return (exit_code, json_summary)");

  py::register_exception<ConeExitError>(m, "ConeExitError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InitRejected>(m, "InitRejected");
}
