#include "doctest.h"

#include <cmath>
#include <vector>

#include "modulus/errors.hpp"
#include "modulus/modular_j.hpp"
#include "modulus/sampling.hpp"

using namespace modulus;
using namespace modulus::modular_j;
using modular_group::Generator;

namespace {

std::vector<Generator> random_word(Sampler& rng, int max_len)
{
    std::vector<Generator> w;
    const int len = static_cast<int>(rng.integer(1, max_len));
    for (int i = 0; i < len; ++i) w.push_back(static_cast<Generator>(rng.integer(0, 2)));
    return w;
}

// tau in the upper half-plane with Im(tau) and Im(g tau) both at least 0.3.
struct Pair {
    HalfPlanePoint tau;
    UnimodularMatrix g;
};

Pair sample_pair(Sampler& rng)
{
    for (;;) {
        const double x = rng.uniform(-0.5, 0.5);
        const double y = rng.uniform(std::sqrt(1.0 - x * x), 2.0);
        const HalfPlanePoint base{x, y};
        const HalfPlanePoint tau = modular_group::moebius_apply(
            modular_group::word_product(random_word(rng, 6)), base);
        const UnimodularMatrix g = modular_group::word_product(random_word(rng, 6));
        if (tau.im() >= 0.3 && modular_group::moebius_apply(g, tau).im() >= 0.3) return {tau, g};
    }
}

} // namespace

TEST_CASE("anchor values")
{
    CHECK(std::abs(j_eval(HalfPlanePoint{0.0, 1.0}) - 1.0) <= 1e-12);
    CHECK(std::abs(j_eval(modular_group::rho())) <= 1e-12);
    // j(2i) = 66^3, J = j / 1728
    CHECK(std::abs(j_eval(HalfPlanePoint{0.0, 2.0}) - 287496.0 / 1728.0) <= 1e-8);
    // j((1 + i sqrt 7)/2) = -15^3
    CHECK(std::abs(j_eval(HalfPlanePoint{0.5, std::sqrt(7.0) / 2.0}) + 3375.0 / 1728.0) <= 1e-10);
}

TEST_CASE("jtilde agrees with j")
{
    Sampler rng(3);
    for (int t = 0; t < 200; ++t) {
        const HalfPlanePoint tau{rng.uniform(-0.5, 0.5), rng.uniform(0.4, 3.0)};
        const Complex a = j_eval(tau);
        const Complex b = jtilde_eval(q_transform::q_from_tau(tau));
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("invariance and derivative laws")
{
    Sampler rng(2024);
    double worst[3] = {0.0, 0.0, 0.0};
    for (int t = 0; t < 500; ++t) {
        const Pair p = sample_pair(rng);
        for (int k = 0; k <= 2; ++k) {
            const double scale = std::max(1.0, std::abs(j_derivative(p.tau, k))) *
                                 std::pow(std::max(1.0, std::abs(p.g.cocycle(p.tau.value()))), 2 * k + 1);
            worst[k] = std::max(worst[k], j_transformation_residual(p.g, p.tau, k) / scale);
        }
    }
    CHECK(worst[0] <= 1e-9);
    CHECK(worst[1] <= 1e-8);
    CHECK(worst[2] <= 1e-8);
}

TEST_CASE("second-derivative law needs the factor c")
{
    const HalfPlanePoint tau{0.1, 1.2};
    const UnimodularMatrix s = UnimodularMatrix::S();
    const Complex cj = s.cocycle(tau.value());
    const HalfPlanePoint st = modular_group::moebius_apply(s, tau);
    const Complex lhs = j_derivative(st, 2);
    const Complex correct = std::pow(cj, 4) * j_derivative(tau, 2) + 2.0 * std::pow(cj, 3) * j_derivative(tau, 1);
    CHECK(std::abs(lhs - correct) <= 1e-8 * std::abs(lhs));

    // For T the cocycle is 1 and c = 0, so the uncorrected extra term 2 J' would not vanish.
    const UnimodularMatrix t = UnimodularMatrix::T();
    const HalfPlanePoint tt = modular_group::moebius_apply(t, tau);
    const Complex literal = j_derivative(tau, 2) + 2.0 * j_derivative(tau, 1);
    CHECK(std::abs(j_derivative(tt, 2) - literal) > 1.0);
    CHECK(j_transformation_residual(t, tau, 2) <= 1e-8 * std::abs(j_derivative(tau, 2)));
}

TEST_CASE("derivatives against finite differences")
{
    Sampler rng(6);
    const double h = 1e-5;
    for (int t = 0; t < 50; ++t) {
        const HalfPlanePoint tau{rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.6)};
        for (int k = 1; k <= 3; ++k) {
            const Complex fp = j_derivative(HalfPlanePoint{tau.value() + h}, k - 1);
            const Complex fm = j_derivative(HalfPlanePoint{tau.value() - h}, k - 1);
            const Complex fd = (fp - fm) / (2.0 * h);
            const Complex exact = j_derivative(tau, k);
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
        const PuncturedDiskPoint q = q_transform::q_from_tau(tau);
        const double hq = 1e-4 * std::abs(q.value());
        for (int k = 1; k <= 2; ++k) {
            const Complex fp = jtilde_derivative(PuncturedDiskPoint{q.value() + hq}, k - 1);
            const Complex fm = jtilde_derivative(PuncturedDiskPoint{q.value() - hq}, k - 1);
            const Complex fd = (fp - fm) / (2.0 * hq);
            const Complex exact = jtilde_derivative(q, k);
            CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("critical points and conjugation")
{
    CHECK(std::abs(j_derivative(HalfPlanePoint{0.0, 1.0}, 1)) <= 1e-10);
    CHECK(std::abs(j_derivative(modular_group::rho(), 1)) <= 1e-10);
    CHECK(std::abs(j_derivative(modular_group::rho(), 2)) <= 1e-9);

    Sampler rng(11);
    for (int t = 0; t < 200; ++t) {
        const double x = rng.uniform(-0.5, 0.5);
        const double y = rng.uniform(0.5, 2.5);
        const Complex a = j_eval(HalfPlanePoint{x, y});
        const Complex b = j_eval(HalfPlanePoint{-x, y});
        CHECK(std::abs(a - std::conj(b)) <= 1e-10 * std::max(1.0, std::abs(a)));
        const Complex on_axis = j_eval(HalfPlanePoint{0.0, y});
        CHECK(std::abs(on_axis.imag()) <= 1e-10 * std::max(1.0, std::abs(on_axis)));
    }
}

TEST_CASE("pole at the cusp")
{
    const double q1 = 1e-5;
    const double q2 = 1e-7;
    const double q3 = 1e-9;
    auto scaled = [](double q) { return q * jtilde_eval(PuncturedDiskPoint{q, 0.0}); };
    // q Jtilde(q) = (1 + 744 q + 196884 q^2 + 21493760 q^3 + ...) / 1728
    auto head = [](double q) { return (1.0 + q * (744.0 + q * (196884.0 + q * 21493760.0))) / 1728.0; };
    CHECK(std::abs(scaled(q3) - 1.0 / 1728.0) <= 1e-9);
    const double predicted = head(q1) - head(q2);
    CHECK(std::abs((scaled(q1) - scaled(q2)) - predicted) <= 1e-6 * std::abs(predicted));
    CHECK(std::abs(scaled(q1) - scaled(q2)) > 1e-6);
    CHECK(std::abs(scaled(q2) - scaled(q3)) <= 1e-7);
    CHECK(std::abs(1.0 / scaled(q3) - 1728.0) <= 1e-2);

    CHECK(std::abs(jtilde_tamed(0.0, 0) - 1.0 / 1728.0) <= 1e-15);
    CHECK(std::abs(jtilde_tamed(0.0, 1) + 1.0 / 1728.0) <= 1e-15);
    CHECK(std::abs(jtilde_tamed(0.0, 2) - 2.0 / 1728.0) <= 1e-15);
    for (int k = 0; k <= 2; ++k) {
        const Complex q{3e-3, 1e-3};
        const Complex direct = std::pow(q, k + 1) * jtilde_derivative(PuncturedDiskPoint{q}, k);
        CHECK(std::abs(jtilde_tamed(q, k) - direct) <= 1e-12);
    }
}

TEST_CASE("argument checks")
{
    CHECK_THROWS_AS(j_derivative(HalfPlanePoint{0.0, 1.0}, 4), UsageError);
    CHECK_THROWS_AS(jtilde_derivative(PuncturedDiskPoint{0.1, 0.0}, 3), UsageError);
    CHECK(theta_numerator(0) == EisensteinPolynomial::E4().pow(3));
}
