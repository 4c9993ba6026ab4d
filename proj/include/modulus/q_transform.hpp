#pragma once

#include "modulus/complex_core.hpp"
#include "modulus/modular_group.hpp"

namespace modulus {

// A point q of the punctured unit disk, 0 < |q| < 1.
class PuncturedDiskPoint {
public:
    // Throws DomainError unless 0 < |q| < 1.
    explicit PuncturedDiskPoint(Complex value);
    PuncturedDiskPoint(double re, double im) : PuncturedDiskPoint(Complex{re, im}) {}

    Complex value() const { return value_; }

private:
    Complex value_;
};

namespace q_transform {

// q = exp(2 pi i tau). Throws RangeError if |q| underflows to zero.
PuncturedDiskPoint q_from_tau(const HalfPlanePoint& tau);

// tau = log(q) / (2 pi i) on the principal branch; Re(tau) in (-1/2, 1/2].
HalfPlanePoint tau_from_q(const PuncturedDiskPoint& q);

// q_j = exp(2 pi i gamma_j tau) computed directly from q, for
// gamma_1 = S, gamma_2 = ST, gamma_3 = ST^-1:
//   q_j = exp(4 pi^2 / (log q + 2 pi i s_j)),  s = 0, 1, -1.
// Throws DomainError for j outside {1,2,3} or a vanishing denominator.
Complex neighbor_q(const PuncturedDiskPoint& q, int j);

// The matrix gamma_j used by neighbor_q.
UnimodularMatrix neighbor_matrix(int j);

// Radius exp(-2 pi delta) of the image of the strip Im(tau) >= delta.
double strip_image_radius(double delta);

} // namespace q_transform
} // namespace modulus
