#pragma once
// Extrinsic geometry of star-shaped surfaces in hyperbolic 3-space,
// described as radial graphs over the unit sphere: a positive field r on
// S^2 gives the surface { exp_o(r(z) z) : z in S^2 } of points at
// hyperbolic distance r(z) from a fixed origin o. This header computes the
// induced metric, the second fundamental form, the principal curvatures
// (outward normal convention: geodesic spheres have positive curvature),
// and the scalar invariants the evolution and its diagnostics consume.
//
// All tensor components are taken in the orthonormal frame of the round
// unit sphere (the frame sphgrid differentiates in), so pointwise algebra
// is plain 2x2 matrix algebra:
//   metric        g_pq = sinh(r)^2 delta_pq + r_p r_q
//   second form   h_pq = (-sinh(r) D_pq r + 2 cosh(r) r_p r_q
//                         + sinh(r)^2 cosh(r) delta_pq) / v,
//                 v = sqrt(sinh(r)^2 + |grad r|^2)
// with D_pq the sphere Hessian. Principal curvatures are the eigenvalues
// of the pencil h x = kappa g x, solved by Cholesky congruence so that a
// perfectly round configuration reports exactly equal curvatures.

#include <stdexcept>
#include <string>

#include "hypflow/sphgrid.hpp"

namespace hypflow {

// Change of radial variable to the log of the Poincare-ball radius
// ("vphi" throughout the I/O formats):
//   vphi(r) = log tanh(r/2) < 0,   d vphi / d r = 1 / sinh(r),
// so grad vphi = grad r / sinh r, and the graph slope
// omega = sqrt(1 + |grad vphi|^2) becomes a pure gradient quantity.
// Useful identities: sinh(r) sinh(-vphi) = 1, cosh(r) = cosh(-vphi)/sinh(-vphi).
double vphi_of_radius(double r);
double radius_of_vphi(double x);

// What geometry() does at a node whose curvature vector leaves the strict
// positivity cone (sigma_1, ..., sigma_k all > 0), which is the domain
// where the speed sigma_k^{1/beta} is defined and parabolic.
enum class ConePolicy {
  Strict,      // throw ConeExitError at the first offending node
  Permissive,  // compute everything anyway; caller inspects sigma_k
};

class ConeExitError : public std::runtime_error {
 public:
  ConeExitError(int node, double theta, double azimuth, double kappa_lo,
                double kappa_hi, int k, double sigma_value);

  int node;            // flattened node index
  double theta;        // colatitude of the node
  double azimuth;      // azimuth of the node (0 on axisymmetric grids)
  double kappa_lo;     // principal curvatures there, ascending
  double kappa_hi;
  int k;               // order of the symmetric function
  double sigma_value;  // sigma_k at the node
};

// Pointwise scalars of the graph surface, one value per grid node.
struct SurfaceGeometry {
  ScalarField kappa_lo;     // principal curvatures, kappa_lo <= kappa_hi
  ScalarField kappa_hi;
  ScalarField sigma_k;      // sigma_k of the curvature pair
  ScalarField support;      // u = sinh(r) / omega, the hyperbolic support
  ScalarField omega;        // graph slope sqrt(1 + |grad vphi|^2)
  ScalarField grad_vphi_sq; // |grad vphi|^2 = |grad r|^2 / sinh(r)^2
};

// Computes the full pointwise geometry of the graph of r.
// k in {1, 2} selects which sigma_k to evaluate and which cone to police.
// Throws std::invalid_argument on size/k mismatch, std::domain_error if r
// is not finite and positive, ConeExitError per the policy.
SurfaceGeometry geometry(const Grid& grid, const ScalarField& r, int k,
                         ConePolicy policy = ConePolicy::Strict);

// Assembles the metric and second fundamental form twice: once from
// derivatives of r, once from derivatives of vphi(r) via
//   g_pq = (delta_pq + vphi_p vphi_q) / sinh(-vphi)^2
//   h_pq = (-D_pq vphi + coth(-vphi)(vphi_p vphi_q + delta_pq))
//          / (sinh(-vphi) omega)
// and returns the max-norm componentwise gaps. The two assemblies are
// algebraically identical, so the gap is pure discretization error of the
// two derivative paths and must shrink at the stencil order.
struct ParametrizationGap {
  double metric;
  double second_form;
};
ParametrizationGap graph_form_gap(const Grid& grid, const ScalarField& r);

}  // namespace hypflow
