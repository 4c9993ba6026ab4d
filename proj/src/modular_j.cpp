#include "modulus/modular_j.hpp"

#include <array>
#include <cmath>

#include "modulus/errors.hpp"

namespace modulus::modular_j {

namespace {

std::array<EisensteinPolynomial, 4> build_numerators()
{
    using P = EisensteinPolynomial;
    std::array<P, 4> out;
    out[0] = P::E4().pow(3);
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        out[k + 1] = eisenstein::theta_derive(out[k]) - P::E2() * out[k];
    }
    return out;
}

void check_order(int order, int max_order, const char* what)
{
    if (order < 0 || order > max_order) {
        throw UsageError(std::string(what) + ": derivative order out of range");
    }
}

Complex finite_or_throw(Complex value)
{
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw RangeError("J evaluation: value not representable in double precision");
    }
    return value;
}

Complex ratio(Complex num, Complex den) { return finite_or_throw(num / den); }

// theta^k J = P_k / disc. Near the cusp the pole is factored out as (P_k / (disc/q)) / q;
// after continuation disc already carries the exact scale of the reduced point.
Complex theta_j(const eisenstein::Jet& jet, int k)
{
    const Complex num = theta_numerator(k).evaluate(jet.e2, jet.e4, jet.e6);
    if (jet.continued) return ratio(num, jet.disc);
    return finite_or_throw(ratio(num, jet.disc_over_q) / jet.q);
}

} // namespace

const EisensteinPolynomial& theta_numerator(int k)
{
    static const std::array<EisensteinPolynomial, 4> numerators = build_numerators();
    check_order(k, 3, "theta_numerator");
    return numerators[static_cast<std::size_t>(k)];
}

Complex j_eval(const HalfPlanePoint& tau, const eisenstein::SeriesBank& bank)
{
    return theta_j(eisenstein::jet(tau, bank), 0);
}

Complex jtilde_eval(const PuncturedDiskPoint& q, const eisenstein::SeriesBank& bank)
{
    return theta_j(eisenstein::jet_at_q(q, bank), 0);
}

Complex j_derivative(const HalfPlanePoint& tau, int order, const eisenstein::SeriesBank& bank)
{
    check_order(order, 3, "j_derivative");
    const Complex two_pi_i{0.0, kTwoPi};
    return std::pow(two_pi_i, order) * theta_j(eisenstein::jet(tau, bank), order);
}

Complex jtilde_derivative(const PuncturedDiskPoint& q, int order, const eisenstein::SeriesBank& bank)
{
    check_order(order, 2, "jtilde_derivative");
    const auto jet = eisenstein::jet_at_q(q, bank);
    const Complex qv = q.value();
    switch (order) {
    case 0: return theta_j(jet, 0);
    // theta = q d/dq: Jtilde' = theta J / q, Jtilde'' = (theta^2 J - theta J) / q^2
    case 1: return theta_j(jet, 1) / qv;
    default: return (theta_j(jet, 2) - theta_j(jet, 1)) / (qv * qv);
    }
}

Complex jtilde_tamed(Complex q, int order, const eisenstein::SeriesBank& bank)
{
    check_order(order, 2, "jtilde_tamed");
    if (!(std::norm(q) < 1.0)) {
        throw DomainError("jtilde_tamed: |q| < 1 violated");
    }
    eisenstein::Jet jet;
    if (q == Complex{0.0, 0.0}) {
        jet.q = q;
        jet.e2 = jet.e4 = jet.e6 = 1.0;
        jet.disc_over_q = bank.disc_over_q()[0].get_d();
    } else {
        jet = eisenstein::jet_at_q(PuncturedDiskPoint{q}, bank);
    }
    auto numerator = [&](int k) { return theta_numerator(k).evaluate(jet.e2, jet.e4, jet.e6); };
    // q^{k+1} Jtilde^{(k)}: P_0, P_1, P_2 - P_1 over disc / q
    switch (order) {
    case 0: return ratio(numerator(0), jet.disc_over_q);
    case 1: return ratio(numerator(1), jet.disc_over_q);
    default: return ratio(numerator(2) - numerator(1), jet.disc_over_q);
    }
}

double j_transformation_residual(const UnimodularMatrix& g, const HalfPlanePoint& tau, int order,
                                 const eisenstein::SeriesBank& bank)
{
    check_order(order, 2, "j_transformation_residual");
    const HalfPlanePoint image = modular_group::moebius_apply(g, tau);
    const Complex j = g.cocycle(tau.value());
    const double c = static_cast<double>(g.c());
    switch (order) {
    case 0: return std::abs(j_eval(image, bank) - j_eval(tau, bank));
    case 1: return std::abs(j_derivative(image, 1, bank) - j * j * j_derivative(tau, 1, bank));
    default: {
        const Complex j3 = j * j * j;
        const Complex rhs = j3 * j * j_derivative(tau, 2, bank) + 2.0 * c * j3 * j_derivative(tau, 1, bank);
        return std::abs(j_derivative(image, 2, bank) - rhs);
    }
    }
}

} // namespace modulus::modular_j
