#pragma once
// Measurement and verification. A run is summarized by a sequence of scalar
// snapshots (one per recording time); the checks here turn the flow's
// qualitative guarantees — two-sided radial bounds, monotone gradient decay,
// curvature/support envelopes, exponential convergence — into pass/fail
// verdicts over that sequence, each with its worst margin and the time at
// which it occurred. A separate seeded suite verifies the algebraic
// backbone (symmetric-function identities and the two graph
// parametrizations) on random samples.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/hypgeom.hpp"
#include "hypflow/sphgrid.hpp"

namespace hypflow {

// One scalar snapshot of the evolving surface.
struct DiagnosticsRecord {
  double t;
  double r_min;
  double r_max;
  double pinching;          // r_max / r_min, >= 1
  double grad_vphi_sq_max;  // max |grad vphi|^2
  double sigma_k_min;
  double sigma_k_max;
  double kappa_min;         // min over nodes of the smaller curvature
  double kappa_max;         // max over nodes of the larger curvature
  double u_min;             // support function range
  double u_max;
  double osc;               // r_max - r_min
  double dist_rhat;         // max |r - r_hat|; NaN when there is no target
};

using Trajectory = std::vector<DiagnosticsRecord>;

// Exact reductions of a state. r_hat may be absent (exploratory exponents
// with no stationary sphere): dist_rhat is then NaN.
DiagnosticsRecord record(double t, const ScalarField& r,
                         const SurfaceGeometry& geo,
                         std::optional<double> r_hat);

struct CheckResult {
  std::string name;
  bool pass;
  double worst_margin;  // signed distance to the bound; >= 0 iff it held
  double worst_time;    // t (or sample index) achieving worst_margin
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(std::string_view name) const;
  // One entry per name; adding a duplicate name throws std::logic_error.
  void add(CheckResult c);
};

// Two-sided radial bound ("c0_sandwich"): every record must satisfy
//   r_min >= min(r_min(0), r_hat) - eps_h
//   r_max <= max(r_max(0), r_hat) + eps_h
// with eps_h = 10 h^2 the discretization slack for mesh width h.
CheckResult verify_c0(const Trajectory& traj, double r_hat, double h);

// "gradient_monotone": grad_vphi_sq_max non-increasing across consecutive
// records, up to 1e-12 absolute slack. Meaningful inside the convergence
// exponent window; callers decide whether it gates anything outside it.
CheckResult verify_gradient_monotone(const Trajectory& traj);

// Least-squares slope of log(selector(record)) against t over the last
// half of the records with positive values (the first half is transient).
// Returns nullopt — no signal — when fewer than 10 records qualify.
std::optional<double> fit_decay_rate(
    const Trajectory& traj,
    const std::function<double(const DiagnosticsRecord&)>& selector);

// Which curvature envelope applies: a speed of order k = 1 preserves mean
// convexity (curvatures uniformly bounded above); k = n preserves uniform
// convexity (curvatures also uniformly bounded below).
enum class BoundsMode { MeanConvex, UniformlyConvex };

// Factor-2 envelopes anchored at the worse of the initial and
// stationary-sphere values — the tightest testable version of "bounded by
// a constant depending only on the initial surface":
//   sigma_k_min_envelope:  sigma_k_min >= 1/2 min(initial, sigma_k at r_hat)
//   sigma_k_max_envelope:  sigma_k_max <= 2 max(initial, sigma_k at r_hat)
//   support_min_envelope:  u_min >= 1/2 min(initial, sinh r_hat)
//   kappa_max_envelope:    kappa_max <= 2 max(initial, coth r_hat)
//   kappa_min_envelope (UniformlyConvex only):
//     kappa_min >= 1/2 min(initial, coth(max(r_max(0), r_hat)))
//     (the anchor is the curvature of the largest sandwiching sphere).
VerificationReport verify_bounds_suite(const Trajectory& traj, BoundsMode mode,
                                       const FlowParams& p, double r_hat);

// Seeded random verification of the algebraic backbone, `samples` draws
// per check (worst_time reports the offending sample index):
//   trace_identities: the three contraction identities of the linearized
//     sigma_k on rotated cone matrices, residuals < 1e-10;
//   maclaurin_inequality: normalized sigma-ratio gaps >= -1e-12 on cone
//     samples, with |gap| <= 1e-12 on isotropic draws (equality detection);
//   parametrization_convergence: the r-form/vphi-form assembly gap on
//     random smooth axisymmetric fields shrinks under grid halving with
//     ratio in [3.5, 4.5].
VerificationReport identity_suite(int samples, std::uint64_t seed);

}  // namespace hypflow
