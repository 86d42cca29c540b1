#include "hypflow/harmonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// P_l^m(x) without the Condon-Shortley phase, m >= 0: seed the diagonal
// with the (positive) double factorial, march up in l.
double assoc_legendre(int l, int m, double x) {
  const double sine = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * sine;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

// (l - m)! / (l + m)! as a running product of reciprocals.
double factorial_ratio(int l, int m) {
  double ratio = 1.0;
  for (int j = l - m + 1; j <= l + m; ++j) ratio /= static_cast<double>(j);
  return ratio;
}

}  // namespace

double real_spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || l > 16 || std::abs(m) > l) {
    throw std::domain_error("real_spherical_harmonic: need 0 <= l <= 16 and "
                            "|m| <= l, got l=" +
                            std::to_string(l) + " m=" + std::to_string(m));
  }
  const int am = std::abs(m);
  const double norm =
      std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * factorial_ratio(l, am));
  const double p = assoc_legendre(l, am, std::cos(theta));
  if (m == 0) return norm * p;
  const double azimuth =
      (m > 0) ? std::cos(am * phi) : std::sin(am * phi);
  return std::sqrt(2.0) * norm * p * azimuth;
}

}  // namespace hypflow
