#pragma once

#include "modulus/eisenstein.hpp"

namespace modulus::modular_j {

// theta^k J = P_k(E2, E4, E6) / (E4^3 - E6^2), theta = (1/2 pi i) d/dtau, k = 0..3.
// P_0 = E4^3 and P_{k+1} = theta P_k - E2 P_k, since theta(E4^3 - E6^2) = E2 (E4^3 - E6^2).
const EisensteinPolynomial& theta_numerator(int k);

// J = E4^3 / (E4^3 - E6^2), normalized so that J(i) = 1 and J(rho) = 0.
// Throws RangeError when the value is not representable in double precision.
Complex j_eval(const HalfPlanePoint& tau, const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// J(tau) = Jtilde(q) evaluated from q directly.
Complex jtilde_eval(const PuncturedDiskPoint& q,
                    const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// d^k J / dtau^k = (2 pi i)^k theta^k J for k in {0, 1, 2, 3}.
Complex j_derivative(const HalfPlanePoint& tau, int order,
                     const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// d^k Jtilde / dq^k for k in {0, 1, 2}.
Complex jtilde_derivative(const PuncturedDiskPoint& q, int order,
                          const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// q^{k+1} d^k Jtilde / dq^k, holomorphic on |q| < 1 including q = 0, for k in {0, 1, 2}.
Complex jtilde_tamed(Complex q, int order,
                     const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// Deviation from
//   order 0: J(g tau) = J(tau)
//   order 1: J'(g tau) = (c tau + d)^2 J'(tau)
//   order 2: J''(g tau) = (c tau + d)^4 J''(tau) + 2 c (c tau + d)^3 J'(tau)
double j_transformation_residual(const UnimodularMatrix& g, const HalfPlanePoint& tau, int order,
                                 const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

} // namespace modulus::modular_j
