#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>

#include "modulus/complex_core.hpp"
#include "modulus/modular_group.hpp"
#include "modulus/q_transform.hpp"
#include "modulus/qseries.hpp"
#include "modulus/rational.hpp"

namespace modulus {

// Polynomial with exact coefficients in commuting generators standing for
// E2, E4, E6. Keys are exponent triples (e2, e4, e6); zero terms are never stored.
class EisensteinPolynomial {
public:
    using Exponents = std::array<unsigned, 3>;

    EisensteinPolynomial() = default;

    static EisensteinPolynomial constant(const Rational& c);
    static EisensteinPolynomial E2();
    static EisensteinPolynomial E4();
    static EisensteinPolynomial E6();
    static EisensteinPolynomial monomial(Exponents e, const Rational& c);

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    EisensteinPolynomial operator+(const EisensteinPolynomial& rhs) const;
    EisensteinPolynomial operator-(const EisensteinPolynomial& rhs) const;
    EisensteinPolynomial operator*(const EisensteinPolynomial& rhs) const;
    EisensteinPolynomial operator*(const Rational& s) const;
    EisensteinPolynomial pow(unsigned n) const;

    // Partial derivative with respect to generator 0, 1 or 2.
    EisensteinPolynomial partial(std::size_t generator) const;

    Complex evaluate(Complex e2, Complex e4, Complex e6) const;

    bool operator==(const EisensteinPolynomial&) const = default;

    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    std::map<Exponents, Rational> terms_;
};

namespace eisenstein {

// zeta(k) for k in {2, 4, 6}; UsageError otherwise.
double zeta_value(int k);

// (1 / 2 zeta(k)) sum over (m, n) != (0, 0), max(|m|, |n|) <= M, of (m tau + n)^-k.
// k must be 4 or 6.
Complex eisenstein_lattice(int k, const HalfPlanePoint& tau, int cutoff);

// G2(tau) = (1/2) sum_{n != 0} n^-2 + (1/2) sum_{m != 0} sum_{n in Z} (m tau + n)^-2,
// inner sum over |n| <= M completed by its Euler-Maclaurin tail, outer sum over |m| <= M.
Complex g2_iterated(const HalfPlanePoint& tau, int cutoff);

// 1 - 24 sum sigma_1(n) q^n, 1 + 240 sum sigma_3(n) q^n, 1 - 504 sum sigma_5(n) q^n.
QSeries eisenstein_qseries(int k, std::size_t order);

// Ramanujan derivation theta = (1/2 pi i) d/dtau on C[E2, E4, E6]:
//   theta E2 = (E2^2 - E4)/12,  theta E4 = (E2 E4 - E6)/3,  theta E6 = (E2 E6 - E4^2)/2.
EisensteinPolynomial theta_derive(const EisensteinPolynomial& p);

// Max over n <= N of |n a_n - [rhs]_n| for the q-side Ramanujan identity of weight k.
Rational q_side_derivative_residual(int k, std::size_t order);

inline constexpr std::size_t kDefaultOrder = 64;

// E2, E4, E6 and (E4^3 - E6^2)/q at a fixed truncation order, plus the radius
// inside which direct Horner evaluation is accurate to double precision.
class SeriesBank {
public:
    explicit SeriesBank(std::size_t order);

    // Shared bank at order 64.
    static const SeriesBank& standard();
    // Cached bank for an arbitrary order.
    static std::shared_ptr<const SeriesBank> at_order(std::size_t order);

    std::size_t order() const { return order_; }
    const QSeries& series(int k) const;
    // 1728 Delta / q = (E4^3 - E6^2) / q, order N - 1, constant term 1728.
    const QSeries& disc_over_q() const { return disc_over_q_; }

    // Largest |q| for which the truncated series are used directly.
    double direct_radius() const { return direct_radius_; }
    double direct_min_imag() const;

private:
    std::size_t order_;
    QSeries e2_;
    QSeries e4_;
    QSeries e6_;
    QSeries disc_over_q_;
    double direct_radius_;
};

// E2, E4, E6 and the discriminant form E4^3 - E6^2 at one point.
struct Jet {
    Complex q;
    Complex e2;
    Complex e4;
    Complex e6;
    Complex disc;        // E4^3 - E6^2
    Complex disc_over_q; // (E4^3 - E6^2) / q
    bool continued = false;
};

// Direct q-series evaluation when Im(tau) is large enough, otherwise reduction
// to the fundamental domain followed by the weight-k laws (and the G2 law for E2).
Jet jet(const HalfPlanePoint& tau, const SeriesBank& bank = SeriesBank::standard());
Jet jet_at_q(const PuncturedDiskPoint& q, const SeriesBank& bank = SeriesBank::standard());

// E_k(tau) for k in {2, 4, 6}.
Complex eisenstein_eval(int k, const HalfPlanePoint& tau, const SeriesBank& bank = SeriesBank::standard());
Complex eisenstein_eval_q(int k, const PuncturedDiskPoint& q, const SeriesBank& bank = SeriesBank::standard());

// k in {4, 6}: |E_k(g tau) - (c tau + d)^k E_k(tau)|.
// k = 2:       |G2(g tau) - (c tau + d)^2 G2(tau) + pi i c (c tau + d)|, G2 = zeta(2) E2.
double weight_law_residual(int k, const UnimodularMatrix& g, const HalfPlanePoint& tau,
                           const SeriesBank& bank = SeriesBank::standard());

} // namespace eisenstein
} // namespace modulus
