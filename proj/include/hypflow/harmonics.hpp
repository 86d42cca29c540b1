#pragma once
// Real spherical harmonics on the unit 2-sphere, orthonormal with respect
// to the round area element:
//
//   Y_l^0      = N_{l,0} P_l(cos theta)
//   Y_l^m      = sqrt(2) N_{l,m}  P_l^m(cos theta) cos(m phi)      (m > 0)
//   Y_l^{-m}   = sqrt(2) N_{l,m}  P_l^m(cos theta) sin(m phi)      (m > 0)
//   N_{l,m}    = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!)
//
// with associated Legendre functions taken WITHOUT the Condon-Shortley
// phase (P_l^m = +(1-x^2)^{m/2} d^m P_l / dx^m, every coefficient
// positive at the leading edge). In particular Y_1^1 is +sqrt(3/4pi)
// sin(theta) cos(phi) and Y_2^0 = 1/4 sqrt(5/pi) (3 cos^2 theta - 1).

namespace hypflow {

// Y_l^m(theta, phi) in the convention above. Throws std::domain_error
// unless 0 <= l <= 16 and |m| <= l (the cap keeps the factorial ratio
// comfortably inside double range).
double real_spherical_harmonic(int l, int m, double theta, double phi);

}  // namespace hypflow
