#include "modulus/qseries.hpp"

#include <algorithm>

#include "modulus/errors.hpp"

namespace modulus {

QSeries::QSeries(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    if (coeffs_.empty()) {
        throw UsageError("QSeries: at least one coefficient required");
    }
    approx_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        approx_.push_back(c.get_d());
    }
}

QSeries QSeries::constant(const Rational& value, std::size_t order)
{
    std::vector<Rational> c(order + 1, Rational(0));
    c[0] = value;
    return QSeries(std::move(c));
}

Complex QSeries::eval(Complex q) const
{
    if (!(std::norm(q) < 1.0)) {
        throw DomainError("eval_qseries: |q| < 1 violated");
    }
    Complex acc{0.0, 0.0};
    for (auto it = approx_.rbegin(); it != approx_.rend(); ++it) {
        acc = acc * q + *it;
    }
    return acc;
}

QSeries QSeries::operator+(const QSeries& rhs) const
{
    const std::size_t n = std::min(order(), rhs.order());
    std::vector<Rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = coeffs_[i] + rhs.coeffs_[i];
    }
    return QSeries(std::move(c));
}

QSeries QSeries::operator-(const QSeries& rhs) const
{
    const std::size_t n = std::min(order(), rhs.order());
    std::vector<Rational> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = coeffs_[i] - rhs.coeffs_[i];
    }
    return QSeries(std::move(c));
}

QSeries QSeries::operator*(const QSeries& rhs) const
{
    const std::size_t n = std::min(order(), rhs.order());
    std::vector<Rational> c(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j <= n; ++j) {
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return QSeries(std::move(c));
}

QSeries QSeries::scaled(const Rational& s) const
{
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) {
        x *= s;
    }
    return QSeries(std::move(c));
}

QSeries QSeries::q_derivative() const
{
    std::vector<Rational> c(coeffs_);
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] *= static_cast<unsigned long>(n);
    }
    return QSeries(std::move(c));
}

QSeries QSeries::divided_by_q() const
{
    if (coeffs_[0] != 0 || coeffs_.size() < 2) {
        throw UsageError("QSeries::divided_by_q: series must vanish at 0 and have order >= 1");
    }
    return QSeries(std::vector<Rational>(coeffs_.begin() + 1, coeffs_.end()));
}

} // namespace modulus
