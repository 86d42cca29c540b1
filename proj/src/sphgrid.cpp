#include "hypflow/sphgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const Grid& grid, const ScalarField& f, const char* who) {
  if (f.size() != static_cast<size_t>(grid.node_count()))
    throw std::domain_error(std::string(who) + ": field length does not match grid");
}

}  // namespace

Grid::Grid(GridMode mode, int n_theta, int n_phi)
    : mode_(mode), n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 8) throw std::domain_error("Grid: need at least 8 colatitude nodes");
  if (mode == GridMode::Axisymmetric1D) {
    h_theta_ = kPi / (n_theta - 1);
    h_phi_ = 0.0;
  } else {
    if (n_phi < 8) throw std::domain_error("Grid: need at least 8 azimuth nodes");
    if (n_phi % 2 != 0)
      throw std::domain_error("Grid: azimuth count must be even (antipodal pole ghosts)");
    h_theta_ = kPi / n_theta;
    h_phi_ = 2.0 * kPi / n_phi;
  }
}

Grid Grid::axisymmetric(int n_theta) { return Grid(GridMode::Axisymmetric1D, n_theta, 1); }

Grid Grid::latlon(int n_theta, int n_phi) { return Grid(GridMode::LatLon2D, n_theta, n_phi); }

double Grid::theta(int j) const {
  return mode_ == GridMode::Axisymmetric1D ? j * h_theta_ : (j + 0.5) * h_theta_;
}

double Grid::phi(int i) const { return i * h_phi_; }

FrameVec gradient(const Grid& grid, const ScalarField& f) {
  check_size(grid, f, "gradient");
  const int nt = grid.n_theta();
  FrameVec out;
  out.comp1.assign(f.size(), 0.0);
  out.comp2.assign(f.size(), 0.0);
  if (grid.mode() == GridMode::Axisymmetric1D) {
    const double inv2h = 0.5 / grid.h_theta();
    // Mirror ghosts make the polar derivative vanish identically.
    for (int j = 1; j < nt - 1; ++j) out.comp1[j] = (f[j + 1] - f[j - 1]) * inv2h;
    return out;
  }
  const int np = grid.n_phi();
  const double inv2ht = 0.5 / grid.h_theta();
  const double inv2hp = 0.5 / grid.h_phi();
  auto value = [&](int j, int i) {
    // Over-pole access lands on the antipodal meridian.
    if (j < 0) {
      j = -1 - j;
      i += np / 2;
    } else if (j >= nt) {
      j = 2 * nt - 1 - j;
      i += np / 2;
    }
    i = ((i % np) + np) % np;
    return f[static_cast<size_t>(j) * np + i];
  };
  for (int j = 0; j < nt; ++j) {
    const double inv_sin = 1.0 / std::sin(grid.theta(j));
    for (int i = 0; i < np; ++i) {
      const size_t id = static_cast<size_t>(j) * np + i;
      out.comp1[id] = (value(j + 1, i) - value(j - 1, i)) * inv2ht;
      out.comp2[id] = (value(j, i + 1) - value(j, i - 1)) * inv2hp * inv_sin;
    }
  }
  return out;
}

FrameSym hessian(const Grid& grid, const ScalarField& f) {
  check_size(grid, f, "hessian");
  const int nt = grid.n_theta();
  FrameSym out;
  out.m11.assign(f.size(), 0.0);
  out.m12.assign(f.size(), 0.0);
  out.m22.assign(f.size(), 0.0);
  if (grid.mode() == GridMode::Axisymmetric1D) {
    const double h = grid.h_theta();
    const double inv_h2 = 1.0 / (h * h);
    const double inv2h = 0.5 / h;
    for (int j = 1; j < nt - 1; ++j) {
      const double ftt = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv_h2;
      const double ft = (f[j + 1] - f[j - 1]) * inv2h;
      out.m11[j] = ftt;
      out.m22[j] = ft / std::tan(grid.theta(j));
    }
    // Poles: mirror ghost for the radial part; the transverse component
    // shares the same limit by smoothness (isotropic Hessian at a pole).
    out.m11[0] = 2.0 * (f[1] - f[0]) * inv_h2;
    out.m22[0] = out.m11[0];
    out.m11[nt - 1] = 2.0 * (f[nt - 2] - f[nt - 1]) * inv_h2;
    out.m22[nt - 1] = out.m11[nt - 1];
    return out;
  }
  const int np = grid.n_phi();
  const double ht = grid.h_theta(), hp = grid.h_phi();
  const double inv_ht2 = 1.0 / (ht * ht), inv_hp2 = 1.0 / (hp * hp);
  const double inv2ht = 0.5 / ht, inv2hp = 0.5 / hp;
  const double inv4 = inv2ht * inv2hp;
  auto value = [&](int j, int i) {
    if (j < 0) {
      j = -1 - j;
      i += np / 2;
    } else if (j >= nt) {
      j = 2 * nt - 1 - j;
      i += np / 2;
    }
    i = ((i % np) + np) % np;
    return f[static_cast<size_t>(j) * np + i];
  };
  for (int j = 0; j < nt; ++j) {
    const double th = grid.theta(j);
    const double sin_th = std::sin(th);
    const double inv_sin = 1.0 / sin_th;
    const double cot = std::cos(th) * inv_sin;
    for (int i = 0; i < np; ++i) {
      const size_t id = static_cast<size_t>(j) * np + i;
      const double c = f[id];
      const double ftt = (value(j + 1, i) - 2.0 * c + value(j - 1, i)) * inv_ht2;
      const double fpp = (value(j, i + 1) - 2.0 * c + value(j, i - 1)) * inv_hp2;
      const double ft = (value(j + 1, i) - value(j - 1, i)) * inv2ht;
      const double fp = (value(j, i + 1) - value(j, i - 1)) * inv2hp;
      const double ftp = (value(j + 1, i + 1) - value(j + 1, i - 1) -
                          value(j - 1, i + 1) + value(j - 1, i - 1)) *
                         inv4;
      out.m11[id] = ftt;
      out.m12[id] = (ftp - cot * fp) * inv_sin;
      out.m22[id] = fpp * inv_sin * inv_sin + cot * ft;
    }
  }
  return out;
}

ScalarField laplacian(const Grid& grid, const ScalarField& f) {
  check_size(grid, f, "laplacian");
  const int nt = grid.n_theta();
  ScalarField out(f.size(), 0.0);
  if (grid.mode() == GridMode::Axisymmetric1D) {
    const double h = grid.h_theta();
    const double inv_h2 = 1.0 / (h * h);
    const double inv2h = 0.5 / h;
    for (int j = 1; j < nt - 1; ++j) {
      const double ftt = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv_h2;
      const double ft = (f[j + 1] - f[j - 1]) * inv2h;
      out[j] = ftt + ft / std::tan(grid.theta(j));
    }
    out[0] = 2.0 * (2.0 * (f[1] - f[0]) * inv_h2);
    out[nt - 1] = 2.0 * (2.0 * (f[nt - 2] - f[nt - 1]) * inv_h2);
    return out;
  }
  const int np = grid.n_phi();
  const double ht = grid.h_theta(), hp = grid.h_phi();
  const double inv_ht2 = 1.0 / (ht * ht), inv_hp2 = 1.0 / (hp * hp);
  const double inv2ht = 0.5 / ht;
  auto value = [&](int j, int i) {
    if (j < 0) {
      j = -1 - j;
      i += np / 2;
    } else if (j >= nt) {
      j = 2 * nt - 1 - j;
      i += np / 2;
    }
    i = ((i % np) + np) % np;
    return f[static_cast<size_t>(j) * np + i];
  };
  for (int j = 0; j < nt; ++j) {
    const double th = grid.theta(j);
    const double inv_sin = 1.0 / std::sin(th);
    const double cot = std::cos(th) * inv_sin;
    for (int i = 0; i < np; ++i) {
      const size_t id = static_cast<size_t>(j) * np + i;
      const double c = f[id];
      const double ftt = (value(j + 1, i) - 2.0 * c + value(j - 1, i)) * inv_ht2;
      const double fpp = (value(j, i + 1) - 2.0 * c + value(j, i - 1)) * inv_hp2;
      const double ft = (value(j + 1, i) - value(j - 1, i)) * inv2ht;
      out[id] = ftt + cot * ft + fpp * inv_sin * inv_sin;
    }
  }
  return out;
}

double reduce_min(const ScalarField& f) {
  if (f.empty()) throw std::domain_error("reduce_min: empty field");
  return *std::min_element(f.begin(), f.end());
}

double reduce_max(const ScalarField& f) {
  if (f.empty()) throw std::domain_error("reduce_max: empty field");
  return *std::max_element(f.begin(), f.end());
}

double reduce_max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace hypflow
