#include "modulus/w_system.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "modulus/errors.hpp"

namespace modulus {

namespace {

using Terms = std::map<MultiIndex, Rational>;
using Keep = std::function<bool(const MultiIndex&)>;

void accumulate(Terms& t, const MultiIndex& e, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = t.try_emplace(e, c);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

MultiIndex add_exponents(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Terms multiply(const Terms& a, const Terms& b, const Keep& keep)
{
    Terms out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            MultiIndex e = add_exponents(ea, eb);
            if (keep(e)) accumulate(out, e, ca * cb);
        }
    }
    return out;
}

Terms filtered(const Terms& t, const Keep& keep)
{
    Terms out;
    for (const auto& [e, c] : t)
        if (keep(e)) out.emplace(e, c);
    return out;
}

} // namespace

unsigned total_degree(const MultiIndex& e) { return std::accumulate(e.begin(), e.end(), 0u); }

MultiPowerSeries::MultiPowerSeries(std::size_t num_vars, unsigned truncation)
    : num_vars_(num_vars), truncation_(truncation)
{
}

MultiPowerSeries MultiPowerSeries::constant(std::size_t num_vars, unsigned truncation, const Rational& c)
{
    MultiPowerSeries s(num_vars, truncation);
    s.add_term(MultiIndex(num_vars, 0), c);
    return s;
}

MultiPowerSeries MultiPowerSeries::variable(std::size_t num_vars, unsigned truncation, std::size_t index)
{
    if (index >= num_vars) throw UsageError("MultiPowerSeries::variable: index out of range");
    MultiPowerSeries s(num_vars, truncation);
    MultiIndex e(num_vars, 0);
    e[index] = 1;
    s.add_term(e, 1);
    return s;
}

Rational MultiPowerSeries::coefficient(const MultiIndex& exponents) const
{
    const auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPowerSeries::add_term(const MultiIndex& exponents, const Rational& c)
{
    if (exponents.size() != num_vars_) throw UsageError("MultiPowerSeries: exponent length differs from num_vars");
    if (total_degree(exponents) > truncation_) return;
    accumulate(terms_, exponents, c);
}

void MultiPowerSeries::require_compatible(const MultiPowerSeries& rhs) const
{
    if (num_vars_ != rhs.num_vars_) throw UsageError("MultiPowerSeries: mismatched num_vars");
}

MultiPowerSeries MultiPowerSeries::operator+(const MultiPowerSeries& rhs) const
{
    require_compatible(rhs);
    MultiPowerSeries out = truncated(std::min(truncation_, rhs.truncation_));
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

MultiPowerSeries MultiPowerSeries::operator-(const MultiPowerSeries& rhs) const { return *this + (-rhs); }

MultiPowerSeries MultiPowerSeries::operator*(const MultiPowerSeries& rhs) const
{
    require_compatible(rhs);
    const unsigned bound = std::min(truncation_, rhs.truncation_);
    MultiPowerSeries out(num_vars_, bound);
    out.terms_ = multiply(terms_, rhs.terms_, [bound](const MultiIndex& e) { return total_degree(e) <= bound; });
    return out;
}

MultiPowerSeries MultiPowerSeries::operator-() const { return scaled(-1); }

MultiPowerSeries MultiPowerSeries::scaled(const Rational& s) const
{
    MultiPowerSeries out(num_vars_, truncation_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
}

MultiPowerSeries MultiPowerSeries::truncated(unsigned truncation) const
{
    MultiPowerSeries out(num_vars_, truncation);
    out.terms_ = filtered(terms_, [truncation](const MultiIndex& e) { return total_degree(e) <= truncation; });
    return out;
}

std::string MultiPowerSeries::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const Rational mag = modulus::abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        const bool bare = total_degree(e) == 0;
        bool star = false;
        if (mag != 1 || bare) {
            os << modulus::to_string(mag);
            star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << (star ? "*" : "") << 'x' << (i + 1);
            if (e[i] > 1) os << '^' << e[i];
            star = true;
        }
        first = false;
    }
    return os.str();
}

namespace w_system {

std::optional<unsigned> order_in_last_variable(const MultiPowerSeries& f)
{
    if (f.num_vars() == 0) throw UsageError("order_in_last_variable: series has no variables");
    const std::size_t last = f.num_vars() - 1;
    std::optional<unsigned> best;
    for (const auto& [e, c] : f.terms()) {
        if (total_degree(e) != e[last]) continue;
        if (!best || e[last] < *best) best = e[last];
    }
    return best;
}

DivisionResult weierstrass_divide(const MultiPowerSeries& f, const MultiPowerSeries& g, unsigned trunc)
{
    if (f.num_vars() != g.num_vars()) throw UsageError("weierstrass_divide: mismatched num_vars");
    const auto order = order_in_last_variable(f);
    if (!order) throw DomainError("weierstrass_divide: f(0, x) vanishes, division impossible");

    const std::size_t m = f.num_vars();
    const std::size_t last = m - 1;
    const unsigned d = *order;
    const unsigned w = std::max(d, 1u);
    const unsigned bound = w * trunc + d;

    auto front_degree = [last](const MultiIndex& e) { return total_degree(e) - e[last]; };
    auto weight = [&](const MultiIndex& e) { return w * front_degree(e) + e[last]; };
    const Keep keep = [&](const MultiIndex& e) { return front_degree(e) <= trunc && weight(e) <= bound; };

    // f(0, x) = x^d V(x) with V a unit of K[[x]]; invert V through degree `bound`.
    std::vector<Rational> v(bound + 1);
    for (const auto& [e, c] : f.terms()) {
        if (front_degree(e) == 0 && e[last] >= d && e[last] - d <= bound) v[e[last] - d] = c;
    }
    std::vector<Rational> v_inv(bound + 1);
    v_inv[0] = 1 / v[0];
    for (unsigned k = 1; k <= bound; ++k) {
        Rational acc = 0;
        for (unsigned j = 1; j <= k; ++j) acc += v[j] * v_inv[k - j];
        v_inv[k] = -acc / v[0];
    }
    Terms v_inv_terms;
    for (unsigned k = 0; k <= bound; ++k) {
        MultiIndex e(m, 0);
        e[last] = k;
        accumulate(v_inv_terms, e, v_inv[k]);
    }

    // f V^-1 = x^d + h with every term of h divisible by some x_i, i < n + 1.
    Terms h = multiply(f.terms(), v_inv_terms, keep);
    {
        MultiIndex xd(m, 0);
        xd[last] = d;
        accumulate(h, xd, -1);
    }

    Terms quotient;
    Terms remainder;
    Terms current = filtered(g.terms(), keep);
    while (!current.empty()) {
        Terms q_part;
        for (const auto& [e, c] : current) {
            if (e[last] >= d) {
                MultiIndex lowered = e;
                lowered[last] -= d;
                accumulate(q_part, lowered, c);
            } else {
                accumulate(remainder, e, c);
            }
        }
        for (const auto& [e, c] : q_part) accumulate(quotient, e, c);
        current = multiply(q_part, h, keep);
        for (auto& [e, c] : current) c = -c;
    }

    MultiPowerSeries q_series(m, trunc);
    const Keep within = [trunc](const MultiIndex& e) { return total_degree(e) <= trunc; };
    for (const auto& [e, c] : multiply(quotient, v_inv_terms, within)) q_series.add_term(e, c);

    std::vector<MultiPowerSeries> remainders(d, MultiPowerSeries(m - 1, trunc));
    for (const auto& [e, c] : remainder) {
        MultiIndex front(e.begin(), e.end() - 1);
        remainders[e[last]].add_term(front, c);
    }
    return DivisionResult{std::move(q_series), std::move(remainders), d};
}

DivisionResult weierstrass_divide_reference(const MultiPowerSeries& f, const MultiPowerSeries& g, unsigned trunc)
{
    if (f.num_vars() != g.num_vars()) throw UsageError("weierstrass_divide_reference: mismatched num_vars");
    const auto order = order_in_last_variable(f);
    if (!order) throw DomainError("weierstrass_divide_reference: f(0, x) vanishes, division impossible");
    const std::size_t m = f.num_vars();
    const std::size_t last = m - 1;
    const unsigned d = *order;
    auto weight = [&](const MultiIndex& e) { return (d + 1) * (total_degree(e) - e[last]) + e[last]; };
    const unsigned limit = (d + 1) * trunc + d;

    MultiIndex lead(m, 0);
    lead[last] = d;
    const Rational c_lead = f.coefficient(lead);

    std::map<std::pair<unsigned, MultiIndex>, Rational> residual;
    auto add = [&](const MultiIndex& e, const Rational& c) {
        const auto key = std::make_pair(weight(e), e);
        auto [it, inserted] = residual.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) residual.erase(it);
        }
    };
    for (const auto& [e, c] : g.terms()) add(e, c);

    MultiPowerSeries q(m, trunc);
    std::vector<MultiPowerSeries> r(d, MultiPowerSeries(m - 1, trunc));
    while (!residual.empty() && residual.begin()->first.first <= limit) {
        const auto [key, c] = *residual.begin();
        const MultiIndex& e = key.second;
        if (e[last] >= d) {
            MultiIndex shifted = e;
            shifted[last] -= d;
            const Rational t = c / c_lead;
            q.add_term(shifted, t);
            for (const auto& [fe, fc] : f.terms()) add(add_exponents(shifted, fe), -t * fc);
        } else {
            r[e[last]].add_term(MultiIndex(e.begin(), e.end() - 1), c);
            residual.erase(residual.begin());
        }
    }
    return DivisionResult{std::move(q), std::move(r), d};
}

MultiPowerSeries division_residual(const MultiPowerSeries& f, const MultiPowerSeries& g,
                                   const DivisionResult& result, unsigned trunc)
{
    const std::size_t m = f.num_vars();
    MultiPowerSeries f_full(m, trunc);
    for (const auto& [e, c] : f.terms()) f_full.add_term(e, c);
    MultiPowerSeries out = g.truncated(trunc) - result.quotient.truncated(trunc) * f_full;
    for (unsigned i = 0; i < result.remainders.size(); ++i) {
        for (const auto& [e, c] : result.remainders[i].terms()) {
            MultiIndex full = e;
            full.push_back(i);
            out.add_term(full, -c);
        }
    }
    return out;
}

MultiPowerSeries ps_inverse(const MultiPowerSeries& f, unsigned trunc)
{
    const std::size_t n = f.num_vars();
    const Rational c0 = f.coefficient(MultiIndex(n, 0));
    if (c0 == 0) throw DomainError("ps_inverse: constant term is zero, series is not a unit");
    // f = c0 (1 - h); 1/f = c0^-1 (1 + h + h^2 + ...), h of order >= 1
    const MultiPowerSeries one = MultiPowerSeries::constant(n, trunc, 1);
    const MultiPowerSeries h = one - f.truncated(trunc).scaled(1 / c0);
    MultiPowerSeries acc = one;
    for (unsigned k = 0; k < trunc; ++k) acc = one + h * acc;
    return acc.scaled(1 / c0);
}

MultiPowerSeries recenter(const MultiPowerSeries& f, const std::vector<Rational>& a, unsigned trunc)
{
    const std::size_t n = f.num_vars();
    if (a.size() != n) throw UsageError("recenter: point dimension differs from num_vars");
    MultiPowerSeries out(n, trunc);
    MultiIndex k(n, 0);
    for (const auto& [e, c] : f.terms()) {
        // expand prod_j (a_j + x_j)^{e_j}, keeping x^k with |k| <= trunc
        std::function<void(std::size_t, unsigned, const Rational&)> expand =
            [&](std::size_t j, unsigned degree, const Rational& coeff) {
                if (j == n) {
                    out.add_term(k, coeff);
                    return;
                }
                Integer binom = 1;
                for (unsigned kj = 0; kj <= e[j] && degree + kj <= trunc; ++kj) {
                    if (kj > 0) binom = binom * (e[j] - kj + 1) / kj;
                    Rational power = 1;
                    for (unsigned r = 0; r < e[j] - kj; ++r) power *= a[j];
                    if (power == 0) continue;
                    k[j] = kj;
                    expand(j + 1, degree + kj, coeff * binom * power);
                }
                k[j] = 0;
            };
        expand(0, 0, c);
    }
    return out;
}

std::string to_json(const MultiPowerSeries& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) {
        terms.push_back({{"exponents", e}, {"coeff", modulus::to_string(c)}});
    }
    const nlohmann::json doc = {{"num_vars", f.num_vars()}, {"truncation", f.truncation()}, {"terms", terms}};
    return doc.dump(2);
}

MultiPowerSeries from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("series JSON: ") + e.what());
    }
    try {
        const auto n = doc.at("num_vars").get<std::size_t>();
        const auto trunc = doc.at("truncation").get<unsigned>();
        MultiPowerSeries out(n, trunc);
        for (const auto& term : doc.at("terms")) {
            const auto e = term.at("exponents").get<MultiIndex>();
            if (e.size() != n) throw UsageError("series JSON: exponent length differs from num_vars");
            if (total_degree(e) > trunc) throw UsageError("series JSON: term exceeds the truncation bound");
            const auto& coeff = term.at("coeff");
            const Rational c = coeff.is_string() ? parse_rational(coeff.get<std::string>())
                                                 : Rational(coeff.get<long>());
            out.add_term(e, c);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("series JSON: ") + e.what());
    }
}

} // namespace w_system
} // namespace modulus
