#include "modulus/modular_group.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modulus/errors.hpp"
#include "modulus/sampling.hpp"

namespace modulus {

UnimodularMatrix::UnimodularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d)
{
    if (a * d - b * c != 1) {
        throw UsageError("UnimodularMatrix: determinant must be 1, got " + to_string());
    }
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& r) const
{
    return {a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_,
            c_ * r.a_ + d_ * r.c_, c_ * r.b_ + d_ * r.d_};
}

UnimodularMatrix UnimodularMatrix::inverse() const { return {d_, -b_, -c_, a_}; }

UnimodularMatrix UnimodularMatrix::operator-() const { return {-a_, -b_, -c_, -d_}; }

Complex UnimodularMatrix::cocycle(Complex tau) const
{
    return static_cast<double>(c_) * tau + static_cast<double>(d_);
}

std::string UnimodularMatrix::to_string() const
{
    std::ostringstream os;
    os << "[[" << a_ << ", " << b_ << "], [" << c_ << ", " << d_ << "]]";
    return os.str();
}

HalfPlanePoint::HalfPlanePoint(Complex value) : value_(value)
{
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw DomainError("HalfPlanePoint: non-finite coordinates");
    }
    if (!(value.imag() > 0.0)) {
        throw DomainError("HalfPlanePoint: Im(tau) > 0 violated");
    }
}

namespace modular_group {

HalfPlanePoint rho() { return HalfPlanePoint{-0.5, std::sqrt(3.0) / 2.0}; }

std::string_view token(Generator g)
{
    switch (g) {
    case Generator::S: return "S";
    case Generator::T: return "T";
    case Generator::TInv: return "T^-1";
    }
    return "?";
}

UnimodularMatrix matrix(Generator g)
{
    switch (g) {
    case Generator::S: return UnimodularMatrix::S();
    case Generator::T: return UnimodularMatrix::T();
    case Generator::TInv: return UnimodularMatrix::T_inv();
    }
    return {};
}

UnimodularMatrix word_product(const std::vector<Generator>& word)
{
    UnimodularMatrix m;
    for (Generator g : word) {
        m = m * matrix(g);
    }
    return m;
}

HalfPlanePoint moebius_apply(const UnimodularMatrix& g, const HalfPlanePoint& tau)
{
    const double a = static_cast<double>(g.a());
    const double b = static_cast<double>(g.b());
    const double c = static_cast<double>(g.c());
    const double d = static_cast<double>(g.d());
    const double x = tau.re();
    const double y = tau.im();
    // (a tau + b)(c conj(tau) + d) / |c tau + d|^2 with ad - bc = 1
    const double cx_d = c * x + d;
    const double cy = c * y;
    const double denom = cx_d * cx_d + cy * cy;
    const double re = ((a * x + b) * cx_d + a * y * cy) / denom;
    const double im = y / denom;
    return HalfPlanePoint{re, im};
}

bool fd_membership(const HalfPlanePoint& tau, Domain variant)
{
    const double x = tau.re();
    if (std::norm(tau.value()) < 1.0) {
        return false;
    }
    if (variant == Domain::Closed) {
        return std::abs(x) <= 0.5;
    }
    return x >= -0.5 && x < 0.5;
}

ReductionResult reduce_to_fd(const HalfPlanePoint& tau, std::size_t iteration_cap)
{
    constexpr double kMaxTranslation = 1e6;
    // Built in application order, reversed at the end.
    std::vector<Generator> applied;
    UnimodularMatrix gamma;
    Complex z = tau.value();

    for (std::size_t iter = 0;; ++iter) {
        if (iter >= iteration_cap) {
            throw InternalError("reduce_to_fd: iteration cap exceeded");
        }
        const double shift = std::floor(z.real() + 0.5);
        if (std::abs(shift) > kMaxTranslation) {
            throw DomainError("reduce_to_fd: |Re(tau)| too large to spell as a generator word");
        }
        if (shift != 0.0) {
            const auto n = static_cast<std::int64_t>(shift);
            gamma = UnimodularMatrix::T_pow(-n) * gamma;
            z = moebius_apply(gamma, tau).value();
            applied.insert(applied.end(), static_cast<std::size_t>(n > 0 ? n : -n),
                           n > 0 ? Generator::TInv : Generator::T);
        }
        if (std::norm(z) < 1.0) {
            gamma = UnimodularMatrix::S() * gamma;
            z = moebius_apply(gamma, tau).value();
            applied.push_back(Generator::S);
            continue;
        }
        break;
    }

    std::vector<Generator> word(applied.rbegin(), applied.rend());
    if (gamma.c() < 0 || (gamma.c() == 0 && gamma.a() < 0)) {
        // S^2 = -I acts trivially and flips the sign of the matrix
        gamma = -gamma;
        word.insert(word.begin(), {Generator::S, Generator::S});
    }
    return ReductionResult{gamma, HalfPlanePoint{z}, std::move(word)};
}

bool tile_membership(const HalfPlanePoint& tau, Tile tile)
{
    const Complex z = tau.value();
    const double x = z.real();
    switch (tile) {
    case Tile::S:
        return std::norm(z) <= 1.0 && std::norm(z - 1.0) >= 1.0 && std::norm(z + 1.0) >= 1.0;
    case Tile::ST:
        return x >= -0.5 && std::norm(z + 1.0 / 3.0) >= 1.0 / 9.0 && std::norm(z + 1.0) <= 1.0;
    case Tile::STInv:
        return x <= 0.5 && std::norm(z - 1.0 / 3.0) >= 1.0 / 9.0 && std::norm(z - 1.0) <= 1.0;
    }
    return false;
}

Region classify(const HalfPlanePoint& tau)
{
    if (fd_membership(tau, Domain::Closed)) return Region::Fbar;
    if (tile_membership(tau, Tile::S)) return Region::S;
    if (tile_membership(tau, Tile::ST)) return Region::ST;
    if (tile_membership(tau, Tile::STInv)) return Region::STInv;
    return Region::None;
}

std::string_view region_name(Region r)
{
    switch (r) {
    case Region::Fbar: return "F";
    case Region::S: return "S";
    case Region::ST: return "ST";
    case Region::STInv: return "STinv";
    case Region::None: return "none";
    }
    return "?";
}

CoveringReport covering_audit(std::size_t sample_count, std::uint64_t seed, double im_min)
{
    Sampler rng(seed);
    CoveringReport report;
    report.samples = sample_count;
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double x = rng.uniform(-0.5, 0.5);
        const double y = rng.uniform(im_min, 3.0);
        const HalfPlanePoint tau{x, y};
        if (classify(tau) == Region::None) {
            report.failures.push_back(tau.value());
        }
    }
    return report;
}

} // namespace modular_group
} // namespace modulus
