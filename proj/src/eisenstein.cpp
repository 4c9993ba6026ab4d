#include "modulus/eisenstein.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "modulus/errors.hpp"

namespace modulus {

// ---------------------------------------------------------------------------
// EisensteinPolynomial

EisensteinPolynomial EisensteinPolynomial::monomial(Exponents e, const Rational& c)
{
    EisensteinPolynomial p;
    p.add_term(e, c);
    return p;
}

EisensteinPolynomial EisensteinPolynomial::constant(const Rational& c) { return monomial({0, 0, 0}, c); }
EisensteinPolynomial EisensteinPolynomial::E2() { return monomial({1, 0, 0}, 1); }
EisensteinPolynomial EisensteinPolynomial::E4() { return monomial({0, 1, 0}, 1); }
EisensteinPolynomial EisensteinPolynomial::E6() { return monomial({0, 0, 1}, 1); }

void EisensteinPolynomial::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

EisensteinPolynomial EisensteinPolynomial::operator+(const EisensteinPolynomial& rhs) const
{
    EisensteinPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) {
        out.add_term(e, c);
    }
    return out;
}

EisensteinPolynomial EisensteinPolynomial::operator-(const EisensteinPolynomial& rhs) const
{
    EisensteinPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) {
        out.add_term(e, -c);
    }
    return out;
}

EisensteinPolynomial EisensteinPolynomial::operator*(const EisensteinPolynomial& rhs) const
{
    EisensteinPolynomial out;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : rhs.terms_) {
            out.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
        }
    }
    return out;
}

EisensteinPolynomial EisensteinPolynomial::operator*(const Rational& s) const
{
    EisensteinPolynomial out;
    for (const auto& [e, c] : terms_) {
        out.add_term(e, c * s);
    }
    return out;
}

EisensteinPolynomial EisensteinPolynomial::pow(unsigned n) const
{
    EisensteinPolynomial out = constant(1);
    for (unsigned i = 0; i < n; ++i) {
        out = out * *this;
    }
    return out;
}

EisensteinPolynomial EisensteinPolynomial::partial(std::size_t generator) const
{
    EisensteinPolynomial out;
    for (const auto& [e, c] : terms_) {
        if (e[generator] == 0) {
            continue;
        }
        Exponents lowered = e;
        --lowered[generator];
        out.add_term(lowered, c * e[generator]);
    }
    return out;
}

Complex EisensteinPolynomial::evaluate(Complex e2, Complex e4, Complex e6) const
{
    Complex acc{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
        acc += c.get_d() * std::pow(e2, static_cast<int>(e[0])) * std::pow(e4, static_cast<int>(e[1])) *
               std::pow(e6, static_cast<int>(e[2]));
    }
    return acc;
}

std::string EisensteinPolynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    static constexpr const char* names[3] = {"E2", "E4", "E6"};
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = modulus::abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        const bool bare = e == Exponents{0, 0, 0};
        if (mag != 1 || bare) {
            os << modulus::to_string(mag);
        }
        bool need_star = mag != 1 && !bare;
        for (std::size_t g = 0; g < 3; ++g) {
            if (e[g] == 0) continue;
            os << (need_star ? "*" : "") << names[g];
            if (e[g] > 1) os << '^' << e[g];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

namespace eisenstein {

double zeta_value(int k)
{
    switch (k) {
    case 2: return kPi * kPi / 6.0;
    case 4: return std::pow(kPi, 4) / 90.0;
    case 6: return std::pow(kPi, 6) / 945.0;
    default: throw UsageError("zeta_value: k must be 2, 4 or 6");
    }
}

Complex eisenstein_lattice(int k, const HalfPlanePoint& tau, int cutoff)
{
    if (k != 4 && k != 6) {
        throw UsageError("eisenstein_lattice: k must be 4 or 6");
    }
    if (cutoff < 1) {
        throw UsageError("eisenstein_lattice: cutoff must be positive");
    }
    const Complex t = tau.value();
    auto term = [k](Complex w) {
        const Complex inv = 1.0 / w;
        const Complex inv2 = inv * inv;
        const Complex inv4 = inv2 * inv2;
        return k == 4 ? inv4 : inv4 * inv2;
    };
    // (m, n) and (-m, -n) contribute equally for even k: sum a half lattice.
    Complex half{0.0, 0.0};
    for (int n = 1; n <= cutoff; ++n) {
        half += term(Complex(n, 0.0));
    }
    for (int m = 1; m <= cutoff; ++m) {
        Complex row{0.0, 0.0};
        const Complex mt = static_cast<double>(m) * t;
        for (int n = -cutoff; n <= cutoff; ++n) {
            row += term(mt + static_cast<double>(n));
        }
        half += row;
    }
    return half / zeta_value(k);
}

namespace {

// sum_{n > N} (n + a)^-2 by Euler-Maclaurin at the midpoint N + 1/2.
Complex inverse_square_tail(int cutoff, Complex a)
{
    const Complex s = static_cast<double>(cutoff) + 0.5 + a;
    const Complex inv = 1.0 / s;
    const Complex inv3 = inv * inv * inv;
    return inv - inv3 / 12.0 + 7.0 * inv3 * inv * inv / 240.0;
}

} // namespace

Complex g2_iterated(const HalfPlanePoint& tau, int cutoff)
{
    if (cutoff < 1) {
        throw UsageError("g2_iterated: cutoff must be positive");
    }
    const Complex t = tau.value();
    // m = 0 row: (1/2) sum_{n != 0} n^-2 = sum_{n >= 1} n^-2
    Complex total{0.0, 0.0};
    for (int n = cutoff; n >= 1; --n) {
        total += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    }
    total += inverse_square_tail(cutoff, Complex{0.0, 0.0});
    // rows m and -m agree after n -> -n, so (1/2) sum_{m != 0} = sum_{m >= 1}
    for (int m = 1; m <= cutoff; ++m) {
        const Complex mt = static_cast<double>(m) * t;
        Complex row{0.0, 0.0};
        for (int n = -cutoff; n <= cutoff; ++n) {
            const Complex inv = 1.0 / (mt + static_cast<double>(n));
            row += inv * inv;
        }
        row += inverse_square_tail(cutoff, mt) + inverse_square_tail(cutoff, -mt);
        total += row;
    }
    return total;
}

QSeries eisenstein_qseries(int k, std::size_t order)
{
    long scale;
    switch (k) {
    case 2: scale = -24; break;
    case 4: scale = 240; break;
    case 6: scale = -504; break;
    default: throw UsageError("eisenstein_qseries: k must be 2, 4 or 6");
    }
    // sigma_{k-1}(n) by a divisor sieve
    std::vector<Integer> sigma(order + 1, Integer(0));
    for (std::size_t d = 1; d <= order; ++d) {
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
        for (std::size_t n = d; n <= order; n += d) {
            sigma[n] += power;
        }
    }
    std::vector<Rational> coeffs(order + 1);
    coeffs[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        coeffs[n] = Rational(sigma[n] * scale);
    }
    return QSeries(std::move(coeffs));
}

EisensteinPolynomial theta_derive(const EisensteinPolynomial& p)
{
    using P = EisensteinPolynomial;
    static const P theta_e2 = (P::E2() * P::E2() - P::E4()) * Rational(1, 12);
    static const P theta_e4 = (P::E2() * P::E4() - P::E6()) * Rational(1, 3);
    static const P theta_e6 = (P::E2() * P::E6() - P::E4() * P::E4()) * Rational(1, 2);
    return p.partial(0) * theta_e2 + p.partial(1) * theta_e4 + p.partial(2) * theta_e6;
}

Rational q_side_derivative_residual(int k, std::size_t order)
{
    if (order < 2) {
        throw UsageError("q_side_derivative_residual: order must be at least 2");
    }
    const QSeries e2 = eisenstein_qseries(2, order);
    const QSeries e4 = eisenstein_qseries(4, order);
    const QSeries e6 = eisenstein_qseries(6, order);
    QSeries lhs = QSeries::constant(0, order);
    QSeries rhs = QSeries::constant(0, order);
    switch (k) {
    case 2:
        lhs = e2.q_derivative();
        rhs = (e2 * e2 - e4).scaled(Rational(1, 12));
        break;
    case 4:
        lhs = e4.q_derivative();
        rhs = (e2 * e4 - e6).scaled(Rational(1, 3));
        break;
    case 6:
        lhs = e6.q_derivative();
        rhs = (e2 * e6 - e4 * e4).scaled(Rational(1, 2));
        break;
    default: throw UsageError("q_side_derivative_residual: k must be 2, 4 or 6");
    }
    Rational worst = 0;
    for (std::size_t n = 0; n <= order; ++n) {
        const Rational diff = modulus::abs(Rational(lhs[n] - rhs[n]));
        if (diff > worst) {
            worst = diff;
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// SeriesBank

namespace {

// Every bank series satisfies |a_n| <= 3456 (n + 1)^6: 504 sigma_5(n) <= 525 n^5
// and |1728 tau(n + 1)| <= 1728 d(n + 1) (n + 1)^{11/2}.
double truncation_tail(std::size_t order, double r)
{
    double tail = 0.0;
    for (std::size_t n = order + 1;; ++n) {
        const double np1 = static_cast<double>(n + 1);
        const double term = 3456.0 * std::pow(np1, 6) * std::pow(r, static_cast<double>(n));
        tail += term;
        if (term < 1e-40 || term < tail * 1e-18) {
            break;
        }
    }
    return tail;
}

double solve_direct_radius(std::size_t order)
{
    double lo = 0.0;
    double hi = 0.99;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (truncation_tail(order, mid) <= 1e-18 ? lo : hi) = mid;
    }
    // the reduced domain Im >= sqrt(3)/2 must always be served directly
    return std::max(lo, std::exp(-kPi * std::sqrt(3.0)) * (1.0 + 1e-12));
}

} // namespace

SeriesBank::SeriesBank(std::size_t order)
    : order_(order),
      e2_(eisenstein_qseries(2, std::max<std::size_t>(order, 1))),
      e4_(eisenstein_qseries(4, std::max<std::size_t>(order, 1))),
      e6_(eisenstein_qseries(6, std::max<std::size_t>(order, 1))),
      disc_over_q_((e4_ * e4_ * e4_ - e6_ * e6_).divided_by_q()),
      direct_radius_(solve_direct_radius(std::max<std::size_t>(order, 1)))
{
    if (order < 1) {
        throw UsageError("SeriesBank: order must be at least 1");
    }
}

const SeriesBank& SeriesBank::standard()
{
    static const SeriesBank bank(kDefaultOrder);
    return bank;
}

std::shared_ptr<const SeriesBank> SeriesBank::at_order(std::size_t order)
{
    static std::mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const SeriesBank>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) {
        slot = std::make_shared<const SeriesBank>(order);
    }
    return slot;
}

const QSeries& SeriesBank::series(int k) const
{
    switch (k) {
    case 2: return e2_;
    case 4: return e4_;
    case 6: return e6_;
    default: throw UsageError("SeriesBank::series: k must be 2, 4 or 6");
    }
}

double SeriesBank::direct_min_imag() const { return -std::log(direct_radius_) / kTwoPi; }

// ---------------------------------------------------------------------------
// Point evaluation

namespace {

Jet direct_jet(Complex q, const SeriesBank& bank)
{
    Jet j;
    j.q = q;
    j.e2 = bank.series(2).eval(q);
    j.e4 = bank.series(4).eval(q);
    j.e6 = bank.series(6).eval(q);
    j.disc_over_q = bank.disc_over_q().eval(q);
    j.disc = q * j.disc_over_q;
    return j;
}

Jet continued_jet(const HalfPlanePoint& tau, const SeriesBank& bank)
{
    const auto red = modular_group::reduce_to_fd(tau);
    // q0 may underflow to 0 high up in the cusp; the series then return their constant terms
    const Complex q0 = complex_core::complex_exp(Complex{0.0, kTwoPi} * red.reduced.value());
    const Jet base = direct_jet(q0, bank);
    // E_k(gamma tau) = (c tau + d)^k E_k(tau) with gamma tau the reduced point
    const Complex j = red.gamma.cocycle(tau.value());
    const double c = static_cast<double>(red.gamma.c());
    const Complex j2 = j * j;
    const Complex j4 = j2 * j2;
    const Complex j6 = j4 * j2;
    Jet out;
    out.continued = true;
    out.q = q_transform::q_from_tau(tau).value();
    out.e4 = base.e4 / j4;
    out.e6 = base.e6 / j6;
    // G2(gamma tau) = j^2 G2(tau) - pi i c j, and E2 = G2 / zeta(2)
    out.e2 = (base.e2 + Complex{0.0, kPi * c} * j / zeta_value(2)) / j2;
    out.disc = base.disc / (j6 * j6);
    out.disc_over_q = out.disc / out.q;
    return out;
}

} // namespace

Jet jet(const HalfPlanePoint& tau, const SeriesBank& bank)
{
    if (tau.im() >= bank.direct_min_imag()) {
        return direct_jet(complex_core::complex_exp(Complex{0.0, kTwoPi} * tau.value()), bank);
    }
    return continued_jet(tau, bank);
}

Jet jet_at_q(const PuncturedDiskPoint& q, const SeriesBank& bank)
{
    if (std::abs(q.value()) <= bank.direct_radius()) {
        return direct_jet(q.value(), bank);
    }
    Jet out = continued_jet(q_transform::tau_from_q(q), bank);
    out.q = q.value();
    out.disc_over_q = out.disc / out.q;
    return out;
}

namespace {

Complex pick(int k, const Jet& j)
{
    switch (k) {
    case 2: return j.e2;
    case 4: return j.e4;
    case 6: return j.e6;
    default: throw UsageError("eisenstein_eval: k must be 2, 4 or 6");
    }
}

} // namespace

Complex eisenstein_eval(int k, const HalfPlanePoint& tau, const SeriesBank& bank)
{
    if (k != 2 && k != 4 && k != 6) {
        throw UsageError("eisenstein_eval: k must be 2, 4 or 6");
    }
    return pick(k, jet(tau, bank));
}

Complex eisenstein_eval_q(int k, const PuncturedDiskPoint& q, const SeriesBank& bank)
{
    if (k != 2 && k != 4 && k != 6) {
        throw UsageError("eisenstein_eval: k must be 2, 4 or 6");
    }
    return pick(k, jet_at_q(q, bank));
}

double weight_law_residual(int k, const UnimodularMatrix& g, const HalfPlanePoint& tau, const SeriesBank& bank)
{
    const Complex j = g.cocycle(tau.value());
    const HalfPlanePoint image = modular_group::moebius_apply(g, tau);
    if (k == 4 || k == 6) {
        return std::abs(eisenstein_eval(k, image, bank) - std::pow(j, k) * eisenstein_eval(k, tau, bank));
    }
    if (k == 2) {
        const double z2 = zeta_value(2);
        const Complex lhs = z2 * eisenstein_eval(2, image, bank);
        const Complex rhs = j * j * z2 * eisenstein_eval(2, tau, bank) -
                            Complex{0.0, kPi * static_cast<double>(g.c())} * j;
        return std::abs(lhs - rhs);
    }
    throw UsageError("weight_law_residual: k must be 2, 4 or 6");
}

} // namespace eisenstein
} // namespace modulus
