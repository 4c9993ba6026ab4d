#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modulus/rational.hpp"

namespace modulus {

using MultiIndex = std::vector<unsigned>;

// Power series in n variables with exact rational coefficients, truncated at
// total degree D. Terms of total degree above D are never stored, nor are
// zero coefficients.
class MultiPowerSeries {
public:
    MultiPowerSeries(std::size_t num_vars, unsigned truncation);

    static MultiPowerSeries constant(std::size_t num_vars, unsigned truncation, const Rational& c);
    // The coordinate function x_{index}, zero-based.
    static MultiPowerSeries variable(std::size_t num_vars, unsigned truncation, std::size_t index);

    std::size_t num_vars() const { return num_vars_; }
    unsigned truncation() const { return truncation_; }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const MultiIndex& exponents) const;
    // Adds c to the coefficient of x^exponents; silently dropped above the truncation.
    void add_term(const MultiIndex& exponents, const Rational& c);

    MultiPowerSeries operator+(const MultiPowerSeries& rhs) const;
    MultiPowerSeries operator-(const MultiPowerSeries& rhs) const;
    MultiPowerSeries operator*(const MultiPowerSeries& rhs) const;
    MultiPowerSeries operator-() const;
    MultiPowerSeries scaled(const Rational& s) const;

    // Same terms, new bound; terms above it are dropped.
    MultiPowerSeries truncated(unsigned truncation) const;

    // Exact equality of the stored terms (the truncation bounds are not compared).
    bool same_terms(const MultiPowerSeries& rhs) const { return num_vars_ == rhs.num_vars_ && terms_ == rhs.terms_; }

    std::string to_string() const;

private:
    void require_compatible(const MultiPowerSeries& rhs) const;

    std::size_t num_vars_;
    unsigned truncation_;
    std::map<MultiIndex, Rational> terms_;
};

unsigned total_degree(const MultiIndex& e);

struct DivisionResult {
    MultiPowerSeries quotient;               // n + 1 variables
    std::vector<MultiPowerSeries> remainders; // R_0 .. R_{d-1}, n variables each
    unsigned order;                          // d
};

namespace w_system {

// Order of f(0, ..., 0, x_last) in x_last, or nullopt if that series vanishes.
// Requires at least one variable.
std::optional<unsigned> order_in_last_variable(const MultiPowerSeries& f);

// g = Q f + sum_{i < d} R_i(x_1..x_n) x_{n+1}^i with every coefficient of total
// degree <= trunc matching exactly. f and g are read as the polynomials their
// stored terms define. Throws DomainError when f(0, x_{n+1}) vanishes.
DivisionResult weierstrass_divide(const MultiPowerSeries& f, const MultiPowerSeries& g, unsigned trunc);

// The same division computed independently, term by term: the residual's
// lowest term under the weight (d + 1) on x_1..x_n and 1 on x_{n+1} moves into
// Q when divisible by x_{n+1}^d and into the remainders otherwise.
DivisionResult weierstrass_divide_reference(const MultiPowerSeries& f, const MultiPowerSeries& g, unsigned trunc);

// g - (Q f + sum R_i x_last^i), truncated at trunc.
MultiPowerSeries division_residual(const MultiPowerSeries& f, const MultiPowerSeries& g,
                                   const DivisionResult& result, unsigned trunc);

// Multiplicative inverse through total degree trunc. Throws DomainError when f(0) = 0.
MultiPowerSeries ps_inverse(const MultiPowerSeries& f, unsigned trunc);

// f(a + x) through total degree trunc, by binomial expansion of each monomial.
MultiPowerSeries recenter(const MultiPowerSeries& f, const std::vector<Rational>& a, unsigned trunc);

// JSON text {num_vars, truncation, terms: [{exponents, coeff: "p/q"}]}.
std::string to_json(const MultiPowerSeries& f);
MultiPowerSeries from_json(const std::string& text);

} // namespace w_system
} // namespace modulus
