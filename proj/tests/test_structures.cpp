#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modulus/errors.hpp"
#include "modulus/modular_j.hpp"
#include "modulus/sampling.hpp"
#include "modulus/structures.hpp"

using namespace modulus;
using namespace modulus::structures;

namespace {

bool has_symbol(const std::vector<StructureSymbol>& list, const std::string& label)
{
    return std::any_of(list.begin(), list.end(), [&](const StructureSymbol& s) { return s.label() == label; });
}

// Smallest double strictly greater than x + gap.
double beyond(double x, double gap)
{
    const double y = x + gap;
    return y > x ? y : std::nextafter(x, std::numeric_limits<double>::infinity());
}

// A point of modulus strictly greater than r in direction theta, by at least `gap` when representable.
std::pair<double, double> outside_disk(double r, double theta, double gap)
{
    double rho = beyond(r, gap);
    for (;;) {
        const double x = rho * std::cos(theta);
        const double y = rho * std::sin(theta);
        if (std::hypot(x, y) > r) return {x, y};
        rho = std::nextafter(rho, 2.0);
    }
}

} // namespace

TEST_CASE("signatures")
{
    const auto rj2 = list_symbols(StructureId::RJ2);
    for (const char* fn : {"exp", "log", "sin", "cos", "arctan", "Jre[0]", "Jim[2]", "qJre[1]"}) {
        CHECK(has_symbol(rj2, fn));
    }
    const auto rj = list_symbols(StructureId::RJ);
    CHECK(has_symbol(rj, "exp"));
    CHECK(describe(parse_symbol_ref("RJ.exp")).domain == "R");
    CHECK(describe(parse_symbol_ref("RJ2.exp")).domain == "[0, 1]");
    const auto rm = list_symbols(StructureId::RM);
    for (int k : {2, 4, 6}) {
        CHECK(has_symbol(rm, "Ere[" + std::to_string(k) + "]"));
        CHECK(has_symbol(rm, "Eim[" + std::to_string(k) + "]"));
    }
    CHECK(list_symbols(StructureId::RJ1, 4).size() == 3 * 4 * 4);
    CHECK(list_symbols(StructureId::RM1, 5).size() == 3 * 5 * 2);
    CHECK(has_symbol(list_symbols(StructureId::RM1), "G[6,32]"));
    CHECK_FALSE(has_symbol(list_symbols(StructureId::RM1), "G[6,33]"));
}

TEST_CASE("symbol references")
{
    const auto ref = parse_symbol_ref("RM1.F[4,7]");
    CHECK(ref.structure == StructureId::RM1);
    CHECK(ref.name == "F");
    CHECK(ref.indices == std::vector<int>{4, 7});
    CHECK(parse_symbol_ref("RJ2.sin").indices.empty());
    CHECK_THROWS_AS(parse_symbol_ref("RX.F[1,1]"), UsageError);
    CHECK_THROWS_AS(parse_symbol_ref("RJ.Jre[0"), UsageError);
    CHECK_THROWS_AS(parse_symbol_ref("RJ.Jre[a]"), UsageError);
    CHECK_THROWS_AS(parse_symbol_ref("RJ.Jre[0,]"), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RJ.F[0,1]")), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RJ1.F[3,1]")), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RJ1.F[0,0]")), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RJ1.F[0,33]")), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RM.Ere[3]")), UsageError);
    CHECK_THROWS_AS(describe(parse_symbol_ref("RM.arctan")), UsageError);
}

TEST_CASE("worked evaluations")
{
    CHECK(std::abs(evaluate_symbol(StructureId::RJ, "Jre", {0}, {0.0, 1.0}) - 1.0) <= 1e-9);
    CHECK(evaluate_symbol(StructureId::RJ, "Jre", {0}, {0.6, 1.0}) == 0.0);
    CHECK(std::abs(evaluate_symbol(StructureId::RJ, "Jim", {0}, {0.0, 1.0})) <= 1e-12);
    CHECK(std::abs(evaluate_symbol(StructureId::RM, "Ere", {6}, {0.0, 1.0})) <= 1e-9);
    CHECK(std::abs(evaluate_symbol(StructureId::RM, "Ere", {2}, {0.0, 1.0}) - 3.0 / kPi) <= 1e-9);
    // n = 1 gives the disk of radius 1/2
    CHECK(evaluate_symbol(StructureId::RJ1, "F", {0, 1}, {0.6, 0.0}) == 0.0);
    CHECK(evaluate_symbol(StructureId::RJ1, "F", {0, 1}, {0.4, 0.0}) != 0.0);
    CHECK(evaluate_symbol(StructureId::RM2, "Ere", {4}, {0.0, 0.0}) == 1.0);
    CHECK(evaluate_symbol(StructureId::RM1, "G", {4, 3}, {0.0, 0.0}) == 0.0);
    CHECK(evaluate_symbol(StructureId::RJ2, "exp", {}, {1.0}) == std::exp(1.0));
    CHECK(evaluate_symbol(StructureId::RJ2, "exp", {}, {1.5}) == 0.0);
    CHECK(evaluate_symbol(StructureId::RJ, "exp", {}, {1.5}) == std::exp(1.5));
    CHECK_THROWS_AS(evaluate_symbol(StructureId::RJ, "exp", {}, {1000.0}), RangeError);
    CHECK_THROWS_AS(evaluate_symbol(StructureId::RJ, "exp", {}, {1.0, 2.0}), UsageError);
}

TEST_CASE("pole handling")
{
    CHECK_THROWS_AS(evaluate_symbol(StructureId::RJ2, "Jre", {0}, {1e-9, 0.0}), DomainError);
    CHECK_THROWS_AS(evaluate_symbol(StructureId::RJ1, "G", {1, 4}, {0.0, 0.0}), DomainError);
    CHECK(std::abs(evaluate_symbol(StructureId::RJ2, "qJre", {0}, {0.0, 0.0}) - 1.0 / 1728.0) <= 1e-15);
    CHECK(evaluate_symbol(StructureId::RJ2, "qJim", {0}, {0.0, 0.0}) == 0.0);
    const double q = 0.01;
    const double raw = evaluate_symbol(StructureId::RJ2, "Jre", {1}, {q, 0.0});
    const double tamed = evaluate_symbol(StructureId::RJ2, "qJre", {1}, {q, 0.0});
    CHECK(std::abs(tamed - q * q * raw) <= 1e-12 * std::abs(tamed));
}

TEST_CASE("zero outside every domain predicate")
{
    Sampler rng(404);
    for (StructureId s : all_structures()) {
        for (const StructureSymbol& sym : list_symbols(s, 6)) {
            for (double gap : {1e-12, 1e-300}) {
                std::vector<std::vector<double>> points;
                if (sym.arity == 1) {
                    const auto iv = complex_core::support(
                        sym.domain == "[0, 1]"     ? complex_core::RestrictedFn::ExpUnit
                        : sym.domain == "[1, 2]"   ? complex_core::RestrictedFn::LogOneTwo
                        : sym.domain == "[-1, 1]"  ? complex_core::RestrictedFn::ArctanUnit
                        : sym.domain == "[-pi, pi]" ? complex_core::RestrictedFn::SinPi
                                                    : complex_core::RestrictedFn::FullExp);
                    if (!std::isfinite(iv.hi)) continue;
                    points.push_back({beyond(iv.hi, gap)});
                    points.push_back({-beyond(-iv.lo, gap)});
                } else if (sym.domain.rfind("|x|", 0) == 0) {
                    const double y_min = std::sqrt(3.0) / 2.0;
                    const double y = rng.uniform(y_min, 3.0);
                    points.push_back({beyond(0.5, gap), y});
                    points.push_back({-beyond(0.5, gap), y});
                    points.push_back({rng.uniform(-0.5, 0.5), -beyond(-y_min, gap)});
                } else {
                    const double r = sym.indices.size() == 2 ? disk_radius(sym.indices[1]) : 1.0 - delta();
                    for (int t = 0; t < 4; ++t) {
                        const auto [x, y] = outside_disk(r, rng.uniform(-kPi, kPi), gap);
                        points.push_back({x, y});
                    }
                    const auto [x, y] = outside_disk(r, 0.0, gap);
                    points.push_back({x, y});
                }
                for (const auto& p : points) {
                    REQUIRE_FALSE(in_domain(s, sym.name, sym.indices, p, 6));
                    const double v = evaluate_symbol(s, sym.name, sym.indices, p, 6);
                    CHECK(v == 0.0);
                    CHECK_FALSE(std::signbit(v));
                }
            }
        }
    }
}

TEST_CASE("radii")
{
    CHECK(delta() == doctest::Approx(4.3331e-3).epsilon(1e-4));
    CHECK(disk_radius(1) == 0.5);
    CHECK(disk_radius(3) == 0.75);
}

TEST_CASE("RJ1 and RJ2 agree on the overlap")
{
    Sampler rng(55);
    double worst = 0.0;
    const double r1 = disk_radius(32);
    for (int t = 0; t < 300; ++t) {
        const double rho = rng.uniform(0.01, std::min(r1, 0.9));
        const double theta = rng.uniform(-kPi, kPi);
        const std::vector<double> p{rho * std::cos(theta), rho * std::sin(theta)};
        for (int j = 0; j <= 2; ++j) {
            const double f = evaluate_symbol(StructureId::RJ1, "F", {j, 32}, p);
            const double g = evaluate_symbol(StructureId::RJ1, "G", {j, 32}, p);
            const double re = evaluate_symbol(StructureId::RJ2, "Jre", {j}, p);
            const double im = evaluate_symbol(StructureId::RJ2, "Jim", {j}, p);
            const double scale = std::max(1.0, std::hypot(re, im));
            worst = std::max({worst, std::abs(f - re) / scale, std::abs(g - im) / scale});
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("conjugation symmetry")
{
    Sampler rng(56);
    for (int t = 0; t < 200; ++t) {
        const double rho = rng.uniform(0.02, 0.7);
        const double theta = rng.uniform(0.0, kPi);
        const double x = rho * std::cos(theta);
        const double y = rho * std::sin(theta);
        for (int j = 0; j <= 2; ++j) {
            const double f = evaluate_symbol(StructureId::RJ1, "F", {j, 8}, {x, y});
            const double g = evaluate_symbol(StructureId::RJ1, "G", {j, 8}, {x, y});
            const double tol = 1e-10 * std::max(1.0, std::hypot(f, g));
            CHECK(std::abs(evaluate_symbol(StructureId::RJ1, "F", {j, 8}, {x, -y}) - f) <= tol);
            CHECK(std::abs(evaluate_symbol(StructureId::RJ1, "G", {j, 8}, {x, -y}) + g) <= tol);
        }
        for (int k : {2, 4, 6}) {
            const double f = evaluate_symbol(StructureId::RM1, "F", {k, 8}, {x, y});
            const double g = evaluate_symbol(StructureId::RM1, "G", {k, 8}, {x, y});
            const double tol = 1e-10 * std::max(1.0, std::hypot(f, g));
            CHECK(std::abs(evaluate_symbol(StructureId::RM1, "G", {k, 8}, {x, -y}) + g) <= tol);
            CHECK(std::abs(evaluate_symbol(StructureId::RM1, "F", {k, 8}, {x, -y}) - f) <= tol);
        }
    }
}

TEST_CASE("strip symbols are not extended periodically")
{
    Sampler rng(57);
    for (int t = 0; t < 50; ++t) {
        const double x = rng.uniform(-0.5, 0.5);
        const double y = rng.uniform(0.9, 2.0);
        const double inside = evaluate_symbol(StructureId::RJ, "Jre", {0}, {x, y});
        const double shifted = evaluate_symbol(StructureId::RJ, "Jre", {0}, {x + 1.0, y});
        CHECK(std::abs(inside - modular_j::j_eval(HalfPlanePoint{x, y}).real()) <= 1e-9 * std::max(1.0, std::abs(inside)));
        CHECK(shifted == 0.0);
        CHECK(evaluate_symbol(StructureId::RM, "Eim", {4}, {x - 1.0, y}) == 0.0);
    }
}

TEST_CASE("evaluation near the disk edge")
{
    // |q| = 1 - delta puts Im(tau) near 7e-4; E_k stays finite through the weight laws
    const double r = 1.0 - delta();
    CHECK(std::isfinite(evaluate_symbol(StructureId::RM2, "Ere", {4}, {-r, 0.0})));
    CHECK(std::isfinite(evaluate_symbol(StructureId::RM2, "Eim", {2}, {r, 0.0})));
    // a generic direction reduces to a moderate point and J is finite there
    CHECK(std::isfinite(evaluate_symbol(StructureId::RJ2, "Jre", {0}, {r * std::cos(0.3), r * std::sin(0.3)})));
    // on the real axis the reduced point sits at height ~1/Im(tau), far beyond double range for J
    CHECK_THROWS_AS(evaluate_symbol(StructureId::RJ2, "Jre", {0}, {r, 0.0}), RangeError);
}
