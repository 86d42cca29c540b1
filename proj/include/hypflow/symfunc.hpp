#pragma once
// Elementary symmetric polynomials of principal curvatures and the cone
// machinery the curvature flow is built on: values, gradients, strict cone
// membership, Maclaurin-ratio gaps, and the contraction identities of the
// linearized operator evaluated on symmetric matrices.
//
// Everything here is dimension-generic; the PDE layer calls in with n = 2.

#include <span>
#include <vector>

namespace hypflow {

// List of eigenvalues / principal curvatures. Order never matters.
using CurvatureVector = std::vector<double>;

// C(n, k) as an exact double. Throws std::domain_error for negative
// arguments, k > n, or values that overflow 64-bit integer arithmetic.
double binomial(int n, int k);

// k-th elementary symmetric polynomial, sigma_0 = 1.
// Throws std::domain_error unless 0 <= k <= lambda.size().
double sigma(int k, std::span<const double> lambda);

// sigma_0 .. sigma_n in one sweep of the expansion recurrence
//   sigma_m(lambda) = sigma_m(lambda|i) + lambda_i sigma_{m-1}(lambda|i).
std::vector<double> sigma_all(std::span<const double> lambda);

// Gradient of sigma_k: component i is sigma_{k-1} of lambda with entry i
// deleted. Strictly positive on the open k-cone.
// Throws std::domain_error unless 1 <= k <= lambda.size().
std::vector<double> sigma_grad(int k, std::span<const double> lambda);

// Strict cone test: sigma_1 .. sigma_k all > 0, zero tolerance.
// Throws std::domain_error unless 1 <= k <= lambda.size().
bool in_cone(int k, std::span<const double> lambda);

// Maclaurin gap  C(n,m) (sigma_l / C(n,l))^{m/l} - sigma_m,  1 <= l < m <= n.
// Nonnegative when lambda lies in the (m-1) cone, zero only at isotropic
// lambda. Throws std::domain_error on bad indices or cone violation.
double maclaurin_gap(int l, int m, std::span<const double> lambda);

// Dense symmetric matrix, row-major storage, symmetry enforced on entry.
class SymMatrix {
 public:
  explicit SymMatrix(int n);
  // From row-major entries; throws std::domain_error unless exactly symmetric.
  SymMatrix(int n, std::span<const double> row_major);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[i * n_ + j]; }
  // Writes both (i,j) and (j,i); symmetry is a class invariant.
  void set(int i, int j, double v);
  double frobenius_norm() const;

 private:
  int n_;
  std::vector<double> a_;
};

// Eigenvalues ascending. Closed form for n <= 2 (cancellation-free
// discriminant), cyclic Jacobi sweeps otherwise.
std::vector<double> sym_eigenvalues(const SymMatrix& w);

// Eigenvalues of [[a11, a12], [a12, a22]], *lo <= *hi. Cancellation-free:
// equal diagonal with zero off-diagonal gives *lo == *hi exactly, so
// allocation-free hot loops can rely on exact isotropy.
void sym_eigenvalues_2x2(double a11, double a12, double a22, double* lo,
                         double* hi);

// Residuals of the three contraction identities of the linearized sigma_k
// operator at W, evaluated independently on the two sides:
//   quadratic: sum_i s_i lambda_i^2  vs  sigma_1 sigma_k - (k+1) sigma_{k+1}
//   linear:    sum_i s_i lambda_i    vs  k sigma_k
//   metric:    sum_i s_i             vs  (n-k+1) sigma_{k-1}
// with s_i = sigma_{k-1}(lambda|i) and lambda the eigenvalues of W.
struct TraceResiduals {
  double quadratic;
  double linear;
  double metric;
};

// Throws std::domain_error if the eigenvalues of W leave the strict k-cone.
TraceResiduals trace_residuals(int k, const SymMatrix& w);

}  // namespace hypflow
