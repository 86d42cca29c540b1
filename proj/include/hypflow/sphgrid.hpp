#pragma once
// Finite-difference calculus on the unit 2-sphere in the orthonormal frame
// (e_theta, e_phi / sin theta): gradient, covariant Hessian, and
// Laplace-Beltrami, plus the node layouts the flow solver runs on.
//
// Two layouts:
//   Axisymmetric1D  colatitude line including both poles, fields constant in
//                   azimuth; pole stencils use even mirror ghosts.
//   LatLon2D        colatitude staggered half a cell off the poles, periodic
//                   azimuth; over-pole ghosts pick up the antipodal value
//                   (azimuth shifted by half a turn), which keeps every
//                   stencil centered and uniform.
//
// All stencils are second-order centered differences. On LatLon2D the mixed
// and azimuthal Hessian components lose one order on the two rings next to
// the poles (the 1/sin theta amplification of azimuthal stencil error);
// everything else, and everything axisymmetric, is clean second order.

#include <vector>

namespace hypflow {

enum class GridMode { Axisymmetric1D, LatLon2D };

class Grid {
 public:
  static Grid axisymmetric(int n_theta);
  static Grid latlon(int n_theta, int n_phi);

  GridMode mode() const { return mode_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int node_count() const { return n_theta_ * n_phi_; }
  double h_theta() const { return h_theta_; }
  double h_phi() const { return h_phi_; }
  double theta(int j) const;
  double phi(int i) const;
  // Row-major node index; i ignored in axisymmetric mode.
  int index(int j, int i = 0) const { return j * n_phi_ + i; }

 private:
  Grid(GridMode mode, int n_theta, int n_phi);
  GridMode mode_;
  int n_theta_;
  int n_phi_;
  double h_theta_;
  double h_phi_;
};

// One value per node, indexed by Grid::index.
using ScalarField = std::vector<double>;

// Frame components of a tangent vector field.
struct FrameVec {
  ScalarField comp1;  // along e_theta
  ScalarField comp2;  // along e_phi / sin theta
};

// Frame components of a symmetric 2-tensor field.
struct FrameSym {
  ScalarField m11;
  ScalarField m12;
  ScalarField m22;
};

// Throw std::domain_error if f.size() != grid.node_count().
FrameVec gradient(const Grid& grid, const ScalarField& f);
FrameSym hessian(const Grid& grid, const ScalarField& f);
ScalarField laplacian(const Grid& grid, const ScalarField& f);

double reduce_min(const ScalarField& f);
double reduce_max(const ScalarField& f);
double reduce_max_abs(const ScalarField& f);

}  // namespace hypflow
