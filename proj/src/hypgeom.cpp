#include "hypflow/hypgeom.hpp"

#include <cmath>
#include <sstream>

#include "hypflow/symfunc.hpp"

namespace hypflow {

double vphi_of_radius(double r) {
  // log tanh(r/2) = log1p(-e^{-r}) - log1p(e^{-r}): full relative precision
  // at both ends (plain log(tanh) loses digits once tanh is close to 1).
  const double e = std::exp(-r);
  return std::log1p(-e) - std::log1p(e);
}

double radius_of_vphi(double x) {
  // 2 atanh(e^x) = log1p(e^x) - log(-expm1(x)), stable as x -> 0^-.
  return std::log1p(std::exp(x)) - std::log(-std::expm1(x));
}

namespace {

std::string cone_exit_message(int node, double theta, double azimuth,
                              double kappa_lo, double kappa_hi, int k,
                              double sigma_value) {
  std::ostringstream os;
  os << "curvature left the strict positivity cone (order " << k
     << ") at node " << node << " (theta=" << theta << ", azimuth=" << azimuth
     << "): kappa=(" << kappa_lo << ", " << kappa_hi
     << "), sigma_" << k << "=" << sigma_value;
  return os.str();
}

// Eigenvalues of the pencil h x = kappa g x for symmetric h and SPD g,
// via Cholesky congruence g = L L^T, A = L^{-1} h L^{-T}.
void pencil_eigenvalues_2x2(double h11, double h12, double h22, double g11,
                            double g12, double g22, double* lo, double* hi) {
  const double l11 = std::sqrt(g11);
  const double l21 = g12 / l11;
  const double l22 = std::sqrt(g22 - l21 * l21);
  // B = L^{-1} h (forward substitution, rows of h).
  const double b11 = h11 / l11;
  const double b12 = h12 / l11;
  const double b21 = (h12 - l21 * b11) / l22;
  const double b22 = (h22 - l21 * b12) / l22;
  // A = B L^{-T}; off-diagonal symmetrized against roundoff.
  const double a11 = b11 / l11;
  const double a12 = (b12 - b11 * l21 / l11) / l22;
  const double a21 = b21 / l11;
  const double a22 = (b22 - b21 * l21 / l11) / l22;
  sym_eigenvalues_2x2(a11, 0.5 * (a12 + a21), a22, lo, hi);
}

void check_radial_field(const Grid& grid, const ScalarField& r) {
  if (r.size() != static_cast<size_t>(grid.node_count()))
    throw std::invalid_argument("radial field size does not match grid");
  for (double v : r) {
    if (!std::isfinite(v))
      throw std::domain_error("radial field is not finite");
    if (v <= 0.0)
      throw std::domain_error(
          "radial field must be positive (graph star-shaped about the origin)");
  }
}

}  // namespace

ConeExitError::ConeExitError(int node_, double theta_, double azimuth_,
                             double kappa_lo_, double kappa_hi_, int k_,
                             double sigma_value_)
    : std::runtime_error(cone_exit_message(node_, theta_, azimuth_, kappa_lo_,
                                           kappa_hi_, k_, sigma_value_)),
      node(node_),
      theta(theta_),
      azimuth(azimuth_),
      kappa_lo(kappa_lo_),
      kappa_hi(kappa_hi_),
      k(k_),
      sigma_value(sigma_value_) {}

SurfaceGeometry geometry(const Grid& grid, const ScalarField& r, int k,
                         ConePolicy policy) {
  if (k < 1 || k > 2)
    throw std::invalid_argument("sigma order k must be 1 or 2 on a surface");
  check_radial_field(grid, r);

  const FrameVec grad = gradient(grid, r);
  const FrameSym hess = hessian(grid, r);
  const int n = grid.node_count();
  SurfaceGeometry out;
  out.kappa_lo.resize(n);
  out.kappa_hi.resize(n);
  out.sigma_k.resize(n);
  out.support.resize(n);
  out.omega.resize(n);
  out.grad_vphi_sq.resize(n);

  const int np = grid.mode() == GridMode::LatLon2D ? grid.n_phi() : 1;
  for (int idx = 0; idx < n; ++idx) {
    const double phi = std::sinh(r[idx]);
    const double dphi = std::cosh(r[idx]);
    const double r1 = grad.comp1[idx];
    const double r2 = grad.comp2[idx];
    const double grad_sq = r1 * r1 + r2 * r2;
    const double v = std::sqrt(phi * phi + grad_sq);

    const double g11 = phi * phi + r1 * r1;
    const double g12 = r1 * r2;
    const double g22 = phi * phi + r2 * r2;
    const double common = phi * phi * dphi;
    const double h11 = (-phi * hess.m11[idx] + 2.0 * dphi * r1 * r1 + common) / v;
    const double h12 = (-phi * hess.m12[idx] + 2.0 * dphi * r1 * r2) / v;
    const double h22 = (-phi * hess.m22[idx] + 2.0 * dphi * r2 * r2 + common) / v;

    double lo, hi;
    pencil_eigenvalues_2x2(h11, h12, h22, g11, g12, g22, &lo, &hi);

    const double kappa[2] = {lo, hi};
    const double sig = sigma(k, kappa);
    if (policy == ConePolicy::Strict && !in_cone(k, kappa)) {
      const int j = idx / np;
      const int i = idx % np;
      throw ConeExitError(idx, grid.theta(j),
                          grid.mode() == GridMode::LatLon2D ? grid.phi(i) : 0.0,
                          lo, hi, k, sig);
    }

    out.kappa_lo[idx] = lo;
    out.kappa_hi[idx] = hi;
    out.sigma_k[idx] = sig;
    out.omega[idx] = v / phi;
    out.support[idx] = phi * phi / v;
    out.grad_vphi_sq[idx] = grad_sq / (phi * phi);
  }
  return out;
}

ParametrizationGap graph_form_gap(const Grid& grid, const ScalarField& r) {
  check_radial_field(grid, r);
  const int n = grid.node_count();

  const FrameVec grad_r = gradient(grid, r);
  const FrameSym hess_r = hessian(grid, r);

  ScalarField x(n);
  for (int i = 0; i < n; ++i) x[i] = vphi_of_radius(r[i]);
  const FrameVec grad_x = gradient(grid, x);
  const FrameSym hess_x = hessian(grid, x);

  ParametrizationGap gap{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double phi = std::sinh(r[i]);
    const double dphi = std::cosh(r[i]);
    const double r1 = grad_r.comp1[i];
    const double r2 = grad_r.comp2[i];
    const double v = std::sqrt(phi * phi + r1 * r1 + r2 * r2);
    const double common = phi * phi * dphi;
    const double g[3] = {phi * phi + r1 * r1, r1 * r2, phi * phi + r2 * r2};
    const double h[3] = {
        (-phi * hess_r.m11[i] + 2.0 * dphi * r1 * r1 + common) / v,
        (-phi * hess_r.m12[i] + 2.0 * dphi * r1 * r2) / v,
        (-phi * hess_r.m22[i] + 2.0 * dphi * r2 * r2 + common) / v};

    // Same tensors from the vphi path: all radial factors re-derived from x
    // so the two assemblies share no intermediate values.
    const double s = std::sinh(-x[i]);   // = 1 / sinh(r)
    const double c = std::cosh(-x[i]);   // = cosh(r) / sinh(r)
    const double coth = c / s;
    const double x1 = grad_x.comp1[i];
    const double x2 = grad_x.comp2[i];
    const double omega = std::sqrt(1.0 + x1 * x1 + x2 * x2);
    const double pre = 1.0 / (s * omega);
    const double gt[3] = {(1.0 + x1 * x1) / (s * s), x1 * x2 / (s * s),
                          (1.0 + x2 * x2) / (s * s)};
    const double ht[3] = {pre * (-hess_x.m11[i] + coth * (x1 * x1 + 1.0)),
                          pre * (-hess_x.m12[i] + coth * x1 * x2),
                          pre * (-hess_x.m22[i] + coth * (x2 * x2 + 1.0))};

    for (int c3 = 0; c3 < 3; ++c3) {
      gap.metric = std::max(gap.metric, std::abs(gt[c3] - g[c3]));
      gap.second_form = std::max(gap.second_form, std::abs(ht[c3] - h[c3]));
    }
  }
  return gap;
}

}  // namespace hypflow
