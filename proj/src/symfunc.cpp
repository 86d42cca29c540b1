#include "hypflow/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypflow {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Recurrence sweep writing sigma_0..sigma_n into e (size n+1).
void sigma_sweep(std::span<const double> lambda, double* e) {
  const int n = static_cast<int>(lambda.size());
  e[0] = 1.0;
  for (int j = 1; j <= n; ++j) e[j] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lambda[i];
    for (int j = std::min(i + 1, n); j >= 1; --j) e[j] += x * e[j - 1];
  }
}

// sigma_{k-1} of lambda with entry `skip` deleted.
double sigma_deleted(int k, std::span<const double> lambda, int skip) {
  const int n = static_cast<int>(lambda.size());
  constexpr int kStack = 16;
  double buf[kStack + 1];
  std::vector<double> heap;
  double* e = buf;
  if (n > kStack) {
    heap.assign(static_cast<size_t>(n) + 1, 0.0);
    e = heap.data();
  }
  e[0] = 1.0;
  for (int j = 1; j <= k - 1; ++j) e[j] = 0.0;
  int seen = 0;
  for (int i = 0; i < n; ++i) {
    if (i == skip) continue;
    const double x = lambda[i];
    ++seen;
    for (int j = std::min(seen, k - 1); j >= 1; --j) e[j] += x * e[j - 1];
  }
  return (k - 1 <= n - 1) ? e[k - 1] : 0.0;
}

}  // namespace

double binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // c * num / i is exact at every step; guard the multiply.
    require(c <= std::numeric_limits<std::uint64_t>::max() / num,
            "binomial: value overflows 64-bit arithmetic");
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return static_cast<double>(c);
}

double sigma(int k, std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  require(k >= 0 && k <= n, "sigma: need 0 <= k <= n");
  constexpr int kStack = 16;
  double buf[kStack + 1];
  if (n <= kStack) {
    sigma_sweep(lambda, buf);
    return buf[k];
  }
  std::vector<double> e(static_cast<size_t>(n) + 1);
  sigma_sweep(lambda, e.data());
  return e[k];
}

std::vector<double> sigma_all(std::span<const double> lambda) {
  std::vector<double> e(lambda.size() + 1);
  sigma_sweep(lambda, e.data());
  return e;
}

std::vector<double> sigma_grad(int k, std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  require(k >= 1 && k <= n, "sigma_grad: need 1 <= k <= n");
  std::vector<double> g(lambda.size());
  for (int i = 0; i < n; ++i) g[i] = sigma_deleted(k, lambda, i);
  return g;
}

bool in_cone(int k, std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  require(k >= 1 && k <= n, "in_cone: need 1 <= k <= n");
  constexpr int kStack = 16;
  double buf[kStack + 1];
  std::vector<double> heap;
  double* e = buf;
  if (n > kStack) {
    heap.assign(static_cast<size_t>(n) + 1, 0.0);
    e = heap.data();
  }
  sigma_sweep(lambda, e);
  for (int j = 1; j <= k; ++j)
    if (!(e[j] > 0.0)) return false;
  return true;
}

double maclaurin_gap(int l, int m, std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  require(l >= 1 && l < m && m <= n, "maclaurin_gap: need 1 <= l < m <= n");
  require(in_cone(m - 1, lambda), "maclaurin_gap: lambda outside the (m-1) cone");
  const double sl = sigma(l, lambda);
  const double sm = sigma(m, lambda);
  const double ratio = sl / binomial(n, l);
  return binomial(n, m) * std::pow(ratio, static_cast<double>(m) / l) - sm;
}

SymMatrix::SymMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
  require(n >= 1, "SymMatrix: dimension must be positive");
}

SymMatrix::SymMatrix(int n, std::span<const double> row_major) : SymMatrix(n) {
  require(row_major.size() == static_cast<size_t>(n) * n,
          "SymMatrix: entry count does not match dimension");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = row_major[static_cast<size_t>(i) * n + j];
      require(v == row_major[static_cast<size_t>(j) * n + i],
              "SymMatrix: input is not symmetric");
      a_[static_cast<size_t>(i) * n + j] = v;
    }
}

void SymMatrix::set(int i, int j, double v) {
  a_[static_cast<size_t>(i) * n_ + j] = v;
  a_[static_cast<size_t>(j) * n_ + i] = v;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

void sym_eigenvalues_2x2(double a11, double a12, double a22, double* lo,
                         double* hi) {
  // Cancellation-free: half-gap via hypot, never b^2 - 4ac. A diagonal-equal
  // matrix with zero off-diagonal yields *lo == *hi exactly.
  const double mean = 0.5 * (a11 + a22);
  const double half_gap = std::hypot(0.5 * (a11 - a22), a12);
  *lo = mean - half_gap;
  *hi = mean + half_gap;
}

std::vector<double> sym_eigenvalues(const SymMatrix& w) {
  const int n = w.dim();
  if (n == 1) return {w(0, 0)};
  if (n == 2) {
    double lo, hi;
    sym_eigenvalues_2x2(w(0, 0), w(0, 1), w(1, 1), &lo, &hi);
    return {lo, hi};
  }
  // Cyclic Jacobi. Quadratic convergence; 30 sweeps is far beyond need.
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = w(i, j);
  auto at = [&a, n](int i, int j) -> double& {
    return a[static_cast<size_t>(i) * n + j];
  };
  const double scale = std::max(w.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = at(r, p), arq = at(r, q);
          at(r, p) = c * arp - s * arq;
          at(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = at(p, r), aqr = at(q, r);
          at(p, r) = c * apr - s * aqr;
          at(q, r) = s * apr + c * aqr;
        }
      }
    }
  }
  std::vector<double> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = at(i, i);
  std::sort(lam.begin(), lam.end());
  return lam;
}

TraceResiduals trace_residuals(int k, const SymMatrix& w) {
  const int n = w.dim();
  require(k >= 1 && k <= n, "trace_residuals: need 1 <= k <= n");
  const std::vector<double> lam = sym_eigenvalues(w);
  require(in_cone(k, lam), "trace_residuals: eigenvalues outside the k-cone");
  const std::vector<double> s = sigma_grad(k, lam);
  double quad = 0.0, lin = 0.0, met = 0.0;
  for (int i = 0; i < n; ++i) {
    quad += s[i] * lam[i] * lam[i];
    lin += s[i] * lam[i];
    met += s[i];
  }
  const std::vector<double> e = sigma_all(lam);
  const double sk1 = (k + 1 <= n) ? e[k + 1] : 0.0;
  return {std::abs(quad - (e[1] * e[k] - (k + 1) * sk1)),
          std::abs(lin - k * e[k]),
          std::abs(met - (n - k + 1) * e[k - 1])};
}

}  // namespace hypflow
