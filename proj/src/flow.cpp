#include "hypflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypflow/symfunc.hpp"

namespace hypflow {

namespace {

void validate_exponents(const FlowParams& p) {
  if (p.n < 2) throw std::invalid_argument("surface dimension n must be >= 2");
  if (p.k < 1 || p.k > p.n)
    throw std::invalid_argument("sigma order k must satisfy 1 <= k <= n");
  if (!(p.beta > 0.0))
    throw std::invalid_argument("speed power beta must be positive");
}

// The one formula both integrators share:
//   -phi^{alpha/beta} sigma^{1/beta} omega + gamma phi,  phi = sinh(r).
double speed(double phi, double sigma_value, double omega_value,
             const FlowParams& p, double gamma_value) {
  return -std::pow(phi, p.alpha / p.beta) *
             std::pow(sigma_value, 1.0 / p.beta) * omega_value +
         gamma_value * phi;
}

}  // namespace

double FlowParams::gamma() const {
  if (n < 2 || k < 1 || k > n)
    throw std::invalid_argument("gamma needs n >= 2 and 1 <= k <= n");
  return binomial(n, k);
}

bool FlowParams::in_convergence_regime() const {
  return alpha > k + beta && beta > 0.0 && beta <= 1.0;
}

double equilibrium_function(double radius, const FlowParams& p) {
  validate_exponents(p);
  return std::pow(std::sinh(radius), (p.alpha - p.k - p.beta) / p.beta) *
         std::pow(std::cosh(radius), p.k / p.beta);
}

namespace {

double balance_root(const FlowParams& p, double target) {
  validate_exponents(p);
  if (!(p.alpha > p.k + p.beta))
    throw std::domain_error(
        "stationary radius needs alpha > k + beta (monotone balance)");
  // eta is strictly increasing from 0 to infinity: bracket then bisect.
  double lo = 1e-12, hi = 1.0;
  while (equilibrium_function(hi, p) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (equilibrium_function(mid, p) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double equilibrium_radius(const FlowParams& p) {
  return balance_root(p, std::pow(p.gamma(), (p.beta - 1.0) / p.beta));
}

double equilibrium_radius_normalized(const FlowParams& p) {
  return balance_root(p, 1.0);
}

double sphere_ode_rhs(double radius, const FlowParams& p) {
  validate_exponents(p);
  if (!(radius > 0.0))
    throw std::domain_error("sphere radius must be positive");
  const double phi = std::sinh(radius);
  const double coth = std::cosh(radius) / phi;
  const std::vector<double> kappa(static_cast<size_t>(p.n), coth);
  return speed(phi, sigma(p.k, kappa), 1.0, p, p.gamma());
}

std::vector<OdeSample> sphere_ode_integrate(double radius0, double dt,
                                            double t_end,
                                            const FlowParams& p) {
  if (!(dt > 0.0) || !(t_end >= 0.0))
    throw std::invalid_argument("need dt > 0 and t_end >= 0");
  std::vector<OdeSample> out;
  out.push_back({0.0, radius0});
  double a = radius0;
  double t = 0.0;
  while (t < t_end - 1e-15 * t_end) {
    const double step = std::min(dt, t_end - t);
    const double k1 = sphere_ode_rhs(a, p);
    const double k2 = sphere_ode_rhs(a + 0.5 * step * k1, p);
    const double k3 = sphere_ode_rhs(a + 0.5 * step * k2, p);
    const double k4 = sphere_ode_rhs(a + step * k3, p);
    a += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
    out.push_back({t, a});
  }
  return out;
}

ScalarField flow_rhs(const Grid& grid, const ScalarField& r,
                     const SurfaceGeometry& geo, const FlowParams& p) {
  validate_exponents(p);
  if (p.n != 2)
    throw std::invalid_argument("the surface integrator requires n = 2");
  const double gamma_value = p.gamma();
  ScalarField out(r.size());
  for (size_t i = 0; i < r.size(); ++i)
    out[i] = speed(std::sinh(r[i]), geo.sigma_k[i], geo.omega[i], p,
                   gamma_value);
  (void)grid;
  return out;
}

ScalarField flow_rhs(const Grid& grid, const ScalarField& r,
                     const FlowParams& p, ConePolicy policy) {
  return flow_rhs(grid, r, geometry(grid, r, p.k, policy), p);
}

ScalarField flow_step(const Grid& grid, const ScalarField& r, double dt,
                      const FlowParams& p) {
  const size_t m = r.size();
  const ScalarField k1 = flow_rhs(grid, r, p);
  ScalarField tmp(m);
  for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + 0.5 * dt * k1[i];
  const ScalarField k2 = flow_rhs(grid, tmp, p);
  for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + 0.5 * dt * k2[i];
  const ScalarField k3 = flow_rhs(grid, tmp, p);
  for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + dt * k3[i];
  const ScalarField k4 = flow_rhs(grid, tmp, p);
  ScalarField out(m);
  for (size_t i = 0; i < m; ++i)
    out[i] = r[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

namespace {

double stable_dt_from(const Grid& grid, const ScalarField& r,
                      const SurfaceGeometry& geo, const FlowParams& p,
                      double safety) {
  double h_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  const int np = grid.mode() == GridMode::LatLon2D ? grid.n_phi() : 1;
  for (int idx = 0; idx < grid.node_count(); ++idx) {
    const double phi = std::sinh(r[idx]);
    double ang = grid.h_theta();
    if (grid.mode() == GridMode::LatLon2D) {
      const double s = std::sin(grid.theta(idx / np));
      ang = std::min(ang, s * grid.h_phi());
    }
    h_min = std::min(h_min, phi * ang);
    const double s_max = p.k == 1 ? 1.0 : geo.kappa_hi[idx];
    const double d = (1.0 / p.beta) * std::pow(phi, p.alpha / p.beta) *
                     std::pow(geo.sigma_k[idx], 1.0 / p.beta - 1.0) * s_max /
                     (phi * phi);
    d_max = std::max(d_max, d);
  }
  const double dt = safety * h_min * h_min / d_max;
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::runtime_error("parabolic step size collapsed");
  return dt;
}

}  // namespace

double stable_dt(const Grid& grid, const ScalarField& r, const FlowParams& p,
                 double safety) {
  validate_exponents(p);
  if (p.n != 2)
    throw std::invalid_argument("the surface integrator requires n = 2");
  return stable_dt_from(grid, r, geometry(grid, r, p.k), p, safety);
}

FlowResult run(const Grid& grid, const ScalarField& r0, const FlowParams& p,
               const RunParams& rp, const FlowObserver& observer) {
  validate_exponents(p);
  if (p.n != 2)
    throw std::invalid_argument("the surface integrator requires n = 2");
  if (!(rp.t_max > 0.0) || !(rp.dt_cap > 0.0) || rp.record_stride < 1)
    throw std::invalid_argument("invalid run parameters");
  // Outside alpha > k + beta there is no stationary sphere to converge to:
  // such exploratory runs are still integrated, but can only end by the
  // clock or a cone exit.
  const bool has_target = p.alpha > p.k + p.beta;
  const double r_hat = has_target ? equilibrium_radius(p) : 0.0;

  ScalarField r = r0;
  SurfaceGeometry geo;
  try {
    geo = geometry(grid, r, p.k);
  } catch (const ConeExitError& e) {
    throw std::domain_error(std::string("initial surface rejected: ") +
                            e.what());
  }

  FlowResult res;
  res.near_cone_boundary = false;
  res.steps = 0;
  double t = 0.0;
  int last_recorded = -1;
  auto record = [&] {
    if (observer) observer(StepObservation{t, r, geo});
    last_recorded = res.steps;
  };
  record();

  const size_t m = r.size();
  ScalarField tmp(m), k1, k2, k3, k4;
  for (;;) {
    double dev = 0.0, grad_sq = 0.0, sig_min = geo.sigma_k[0];
    for (size_t i = 0; i < m; ++i) {
      dev = std::max(dev, std::abs(r[i] - r_hat));
      grad_sq = std::max(grad_sq, geo.grad_vphi_sq[i]);
      sig_min = std::min(sig_min, geo.sigma_k[i]);
    }
    if (sig_min < 1e-8) res.near_cone_boundary = true;
    if (has_target && grad_sq < rp.tol_grad * rp.tol_grad &&
        dev < rp.tol_radius) {
      res.status = RunStatus::Converged;
      break;
    }
    if (t >= rp.t_max) {
      res.status = RunStatus::TimeLimit;
      break;
    }

    const double dt = std::min({rp.dt_cap,
                                stable_dt_from(grid, r, geo, p, rp.safety),
                                rp.t_max - t});
    try {
      k1 = flow_rhs(grid, r, geo, p);
      for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + 0.5 * dt * k1[i];
      k2 = flow_rhs(grid, tmp, p);
      for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + 0.5 * dt * k2[i];
      k3 = flow_rhs(grid, tmp, p);
      for (size_t i = 0; i < m; ++i) tmp[i] = r[i] + dt * k3[i];
      k4 = flow_rhs(grid, tmp, p);
      for (size_t i = 0; i < m; ++i)
        r[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      geo = geometry(grid, r, p.k);
    } catch (const ConeExitError& e) {
      res.status = RunStatus::ConeExit;
      res.message = e.what();
      break;
    }
    t += dt;
    ++res.steps;
    if (res.steps % rp.record_stride == 0) record();
  }

  if (last_recorded != res.steps && res.status != RunStatus::ConeExit)
    record();
  res.t_final = t;
  res.r_final = std::move(r);
  return res;
}

}  // namespace hypflow
