#include "hypflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "hypflow/symfunc.hpp"

namespace hypflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double coth(double x) { return 1.0 / std::tanh(x); }

// Running minimum of signed margins together with the time achieving it.
struct WorstTracker {
  double margin = kInf;
  double time = 0.0;
  void feed(double m, double t) {
    if (m < margin) {
      margin = m;
      time = t;
    }
  }
  CheckResult finish(std::string name) const {
    double m = (margin == kInf) ? 0.0 : margin;
    return CheckResult{std::move(name), m >= 0.0, m, time};
  }
};

void require_nonempty(const Trajectory& traj, const char* who) {
  if (traj.empty()) {
    throw std::invalid_argument(std::string(who) +
                                " needs a nonempty trajectory");
  }
}

}  // namespace

DiagnosticsRecord record(double t, const ScalarField& r,
                         const SurfaceGeometry& geo,
                         std::optional<double> r_hat) {
  DiagnosticsRecord rec{};
  rec.t = t;
  rec.r_min = reduce_min(r);
  rec.r_max = reduce_max(r);
  rec.pinching = rec.r_max / rec.r_min;
  rec.grad_vphi_sq_max = reduce_max(geo.grad_vphi_sq);
  rec.sigma_k_min = reduce_min(geo.sigma_k);
  rec.sigma_k_max = reduce_max(geo.sigma_k);
  rec.kappa_min = reduce_min(geo.kappa_lo);
  rec.kappa_max = reduce_max(geo.kappa_hi);
  rec.u_min = reduce_min(geo.support);
  rec.u_max = reduce_max(geo.support);
  rec.osc = rec.r_max - rec.r_min;
  if (r_hat) {
    rec.dist_rhat = std::max(std::abs(rec.r_max - *r_hat),
                             std::abs(rec.r_min - *r_hat));
  } else {
    rec.dist_rhat = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void VerificationReport::add(CheckResult c) {
  if (find(c.name) != nullptr) {
    throw std::logic_error("duplicate check name: " + c.name);
  }
  checks.push_back(std::move(c));
}

CheckResult verify_c0(const Trajectory& traj, double r_hat, double h) {
  require_nonempty(traj, "verify_c0");
  const double eps = 10.0 * h * h;
  const double floor = std::min(traj.front().r_min, r_hat) - eps;
  const double ceil = std::max(traj.front().r_max, r_hat) + eps;
  WorstTracker worst;
  for (const DiagnosticsRecord& rec : traj) {
    worst.feed(rec.r_min - floor, rec.t);
    worst.feed(ceil - rec.r_max, rec.t);
  }
  return worst.finish("c0_sandwich");
}

CheckResult verify_gradient_monotone(const Trajectory& traj) {
  require_nonempty(traj, "verify_gradient_monotone");
  constexpr double kSlack = 1e-12;
  WorstTracker worst;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double drop =
        traj[i - 1].grad_vphi_sq_max - traj[i].grad_vphi_sq_max;
    worst.feed(drop + kSlack, traj[i].t);
  }
  return worst.finish("gradient_monotone");
}

std::optional<double> fit_decay_rate(
    const Trajectory& traj,
    const std::function<double(const DiagnosticsRecord&)>& selector) {
  std::vector<double> ts;
  std::vector<double> logs;
  for (const DiagnosticsRecord& rec : traj) {
    const double v = selector(rec);
    if (std::isfinite(v) && v > 0.0) {
      ts.push_back(rec.t);
      logs.push_back(std::log(v));
    }
  }
  if (ts.size() < 10) return std::nullopt;
  // The first half of the positive samples is treated as transient; the
  // rate is the least-squares slope over the remaining half.
  const std::size_t begin = ts.size() / 2;
  const std::size_t count = ts.size() - begin;
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = begin; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += logs[i];
  }
  t_mean /= static_cast<double>(count);
  y_mean /= static_cast<double>(count);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = begin; i < ts.size(); ++i) {
    const double dt = ts[i] - t_mean;
    num += dt * (logs[i] - y_mean);
    den += dt * dt;
  }
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

VerificationReport verify_bounds_suite(const Trajectory& traj, BoundsMode mode,
                                       const FlowParams& p, double r_hat) {
  require_nonempty(traj, "verify_bounds_suite");
  if (!(std::isfinite(r_hat) && r_hat > 0.0)) {
    throw std::invalid_argument("verify_bounds_suite: r_hat must be positive");
  }
  const DiagnosticsRecord& first = traj.front();

  const double kappa_hat = coth(r_hat);
  const CurvatureVector round(static_cast<std::size_t>(p.n), kappa_hat);
  const double sigma_hat = sigma(p.k, round);
  const double support_hat = std::sinh(r_hat);

  const double sigma_floor = 0.5 * std::min(first.sigma_k_min, sigma_hat);
  const double sigma_cap = 2.0 * std::max(first.sigma_k_max, sigma_hat);
  const double support_floor = 0.5 * std::min(first.u_min, support_hat);
  const double kappa_cap = 2.0 * std::max(first.kappa_max, kappa_hat);
  // Lower curvature anchor: the largest sphere sandwiching the initial
  // surface and the stationary one has radius max(r_max(0), r_hat) and the
  // smallest curvature of everything in between.
  const double kappa_floor =
      0.5 * std::min(first.kappa_min, coth(std::max(first.r_max, r_hat)));

  WorstTracker sigma_lo, sigma_hi, support_lo, kappa_hi, kappa_lo;
  for (const DiagnosticsRecord& rec : traj) {
    sigma_lo.feed(rec.sigma_k_min - sigma_floor, rec.t);
    sigma_hi.feed(sigma_cap - rec.sigma_k_max, rec.t);
    support_lo.feed(rec.u_min - support_floor, rec.t);
    kappa_hi.feed(kappa_cap - rec.kappa_max, rec.t);
    kappa_lo.feed(rec.kappa_min - kappa_floor, rec.t);
  }

  VerificationReport report;
  report.add(sigma_lo.finish("sigma_k_min_envelope"));
  report.add(sigma_hi.finish("sigma_k_max_envelope"));
  report.add(support_lo.finish("support_min_envelope"));
  report.add(kappa_hi.finish("kappa_max_envelope"));
  if (mode == BoundsMode::UniformlyConvex) {
    report.add(kappa_lo.finish("kappa_min_envelope"));
  }
  return report;
}

namespace {

// Random symmetric matrix with the given eigenvalues: a diagonal matrix
// conjugated by a handful of random Givens rotations.
SymMatrix rotated_diagonal(const std::vector<double>& lambda,
                           std::mt19937_64& rng) {
  const int n = static_cast<int>(lambda.size());
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) a[i * n + i] = lambda[i];

  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const int rotations = 3 * n;
  for (int rot = 0; rot < rotations; ++rot) {
    int pp = pick(rng);
    int q = pick(rng);
    if (pp == q) continue;
    const double th = angle(rng);
    const double c = std::cos(th);
    const double s = std::sin(th);
    // A <- G^T A G with G the rotation in the (pp, q) plane.
    for (int j = 0; j < n; ++j) {
      const double apj = a[pp * n + j];
      const double aqj = a[q * n + j];
      a[pp * n + j] = c * apj + s * aqj;
      a[q * n + j] = -s * apj + c * aqj;
    }
    for (int i = 0; i < n; ++i) {
      const double aip = a[i * n + pp];
      const double aiq = a[i * n + q];
      a[i * n + pp] = c * aip + s * aiq;
      a[i * n + q] = -s * aip + c * aiq;
    }
  }

  SymMatrix w(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      w.set(i, j, 0.5 * (a[i * n + j] + a[j * n + i]));
    }
  }
  return w;
}

CheckResult check_trace_identities(int samples, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 5);
  std::uniform_real_distribution<double> eig(0.05, 2.0);
  constexpr double kTol = 1e-10;
  WorstTracker worst;
  for (int s = 0; s < samples; ++s) {
    const int n = dim(rng);
    std::uniform_int_distribution<int> order(1, n);
    const int k = order(rng);
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (double& l : lambda) l = eig(rng);
    const SymMatrix w = rotated_diagonal(lambda, rng);
    const TraceResiduals res = trace_residuals(k, w);
    const double r = std::max({std::abs(res.quadratic), std::abs(res.linear),
                               std::abs(res.metric)});
    worst.feed(kTol - r, static_cast<double>(s));
  }
  return worst.finish("trace_identities");
}

CheckResult check_maclaurin(int samples, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 5);
  std::uniform_real_distribution<double> eig(0.05, 2.0);
  constexpr double kTol = 1e-12;
  WorstTracker worst;
  for (int s = 0; s < samples; ++s) {
    const int n = dim(rng);
    std::uniform_int_distribution<int> low(1, n - 1);
    const int l = low(rng);
    std::uniform_int_distribution<int> high(l + 1, n);
    const int m = high(rng);
    std::vector<double> lambda(static_cast<std::size_t>(n));
    const bool isotropic = (s % 10 == 0);
    if (isotropic) {
      // Every tenth draw is isotropic, where the gap must vanish: the
      // inequality check doubles as an equality detector.
      std::fill(lambda.begin(), lambda.end(), eig(rng));
    } else {
      for (double& v : lambda) v = eig(rng);
    }
    const double gap = maclaurin_gap(l, m, lambda);
    const double margin = isotropic ? (kTol - std::abs(gap)) : (gap + kTol);
    worst.feed(margin, static_cast<double>(s));
  }
  return worst.finish("maclaurin_inequality");
}

CheckResult check_parametrization(int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> base(0.8, 1.3);
  std::uniform_real_distribution<double> amp(0.02, 0.05);
  std::uniform_int_distribution<int> coin(0, 1);
  const Grid coarse = Grid::axisymmetric(65);
  const Grid fine = Grid::axisymmetric(129);
  WorstTracker worst;
  for (int s = 0; s < samples; ++s) {
    const double c0 = base(rng);
    double a[3];
    for (double& v : a) v = (coin(rng) ? 1.0 : -1.0) * amp(rng);
    auto sample_on = [&](const Grid& g) {
      ScalarField r(static_cast<std::size_t>(g.node_count()));
      for (int j = 0; j < g.n_theta(); ++j) {
        const double th = g.theta(j);
        r[g.index(j)] = c0 + a[0] * std::cos(th) + a[1] * std::cos(2.0 * th) +
                        a[2] * std::cos(3.0 * th);
      }
      return r;
    };
    auto residual = [&](const Grid& g) {
      const ParametrizationGap gap = graph_form_gap(g, sample_on(g));
      return std::max(gap.metric, gap.second_form);
    };
    const double ratio = residual(coarse) / residual(fine);
    worst.feed(std::min(ratio - 3.5, 4.5 - ratio), static_cast<double>(s));
  }
  return worst.finish("parametrization_convergence");
}

}  // namespace

VerificationReport identity_suite(int samples, std::uint64_t seed) {
  if (samples <= 0) {
    throw std::invalid_argument("identity_suite: samples must be positive");
  }
  std::mt19937_64 rng(seed);
  VerificationReport report;
  report.add(check_trace_identities(samples, rng));
  report.add(check_maclaurin(samples, rng));
  report.add(check_parametrization(samples, rng));
  return report;
}

}  // namespace hypflow
