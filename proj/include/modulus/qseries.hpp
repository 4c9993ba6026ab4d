#pragma once

#include <cstddef>
#include <vector>

#include "modulus/complex_core.hpp"
#include "modulus/rational.hpp"

namespace modulus {

// Truncated power series sum_{n <= N} a_n q^n with exact coefficients.
// Immutable; a double-precision copy of the coefficients is kept for evaluation.
class QSeries {
public:
    // Coefficients a_0..a_N; must be non-empty.
    explicit QSeries(std::vector<Rational> coefficients);

    // Constant series of order N.
    static QSeries constant(const Rational& value, std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    // Horner evaluation; throws DomainError for |q| >= 1.
    Complex eval(Complex q) const;

    // Arithmetic truncates to the smaller order.
    QSeries operator+(const QSeries& rhs) const;
    QSeries operator-(const QSeries& rhs) const;
    QSeries operator*(const QSeries& rhs) const;
    QSeries scaled(const Rational& s) const;

    // q d/dq: a_n -> n a_n.
    QSeries q_derivative() const;

    // (f - f(0)) / q; the order drops by one. Throws UsageError if a_0 != 0 or N = 0.
    QSeries divided_by_q() const;

    bool operator==(const QSeries& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    std::vector<Rational> coeffs_;
    std::vector<double> approx_;
};

inline Complex eval_qseries(const QSeries& s, Complex q) { return s.eval(q); }

} // namespace modulus
