#include "modulus/q_transform.hpp"

#include <cmath>

#include "modulus/errors.hpp"

namespace modulus {

PuncturedDiskPoint::PuncturedDiskPoint(Complex value) : value_(value)
{
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw DomainError("PuncturedDiskPoint: non-finite coordinates");
    }
    const double r2 = std::norm(value);
    if (!(r2 > 0.0) || !(r2 < 1.0)) {
        throw DomainError("PuncturedDiskPoint: 0 < |q| < 1 violated");
    }
}

namespace q_transform {

PuncturedDiskPoint q_from_tau(const HalfPlanePoint& tau)
{
    const Complex q = complex_core::complex_exp(Complex{0.0, kTwoPi} * tau.value());
    if (q == Complex{0.0, 0.0}) {
        throw RangeError("q_from_tau: exp(2 pi i tau) underflows to 0");
    }
    return PuncturedDiskPoint{q};
}

HalfPlanePoint tau_from_q(const PuncturedDiskPoint& q)
{
    const Complex log_q = complex_core::principal_log(q.value());
    // log q / (2 pi i) = arg q / (2 pi) - i log|q| / (2 pi)
    return HalfPlanePoint{log_q.imag() / kTwoPi, -log_q.real() / kTwoPi};
}

UnimodularMatrix neighbor_matrix(int j)
{
    switch (j) {
    case 1: return UnimodularMatrix::S();
    case 2: return UnimodularMatrix::S() * UnimodularMatrix::T();
    case 3: return UnimodularMatrix::S() * UnimodularMatrix::T_inv();
    default: throw DomainError("neighbor_q: j must be 1, 2 or 3");
    }
}

Complex neighbor_q(const PuncturedDiskPoint& q, int j)
{
    double shift;
    switch (j) {
    case 1: shift = 0.0; break;
    case 2: shift = 1.0; break;
    case 3: shift = -1.0; break;
    default: throw DomainError("neighbor_q: j must be 1, 2 or 3");
    }
    const Complex two_pi_i{0.0, kTwoPi};
    const Complex denom = complex_core::principal_log(q.value()) + shift * two_pi_i;
    if (denom == Complex{0.0, 0.0}) {
        throw DomainError("neighbor_q: log q + 2 pi i s vanishes");
    }
    // exp[-2 pi i (2 pi i / denom)]
    return complex_core::complex_exp(-two_pi_i * (two_pi_i / denom));
}

double strip_image_radius(double delta)
{
    if (!(delta > 0.0)) {
        throw DomainError("strip_image_radius: delta > 0 violated");
    }
    return std::exp(-kTwoPi * delta);
}

} // namespace q_transform
} // namespace modulus
