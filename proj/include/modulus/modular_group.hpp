#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modulus/complex_core.hpp"

namespace modulus {

// Element of SL(2, Z): integer entries with ad - bc = 1.
class UnimodularMatrix {
public:
    // Identity.
    constexpr UnimodularMatrix() = default;

    // Throws UsageError unless ad - bc = 1.
    UnimodularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix S() { return {0, -1, 1, 0}; }
    static UnimodularMatrix T() { return {1, 1, 0, 1}; }
    static UnimodularMatrix T_inv() { return {1, -1, 0, 1}; }
    static UnimodularMatrix T_pow(std::int64_t n) { return {1, n, 0, 1}; }

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    std::int64_t d() const { return d_; }

    UnimodularMatrix operator*(const UnimodularMatrix& rhs) const;
    UnimodularMatrix inverse() const;
    UnimodularMatrix operator-() const;

    // Automorphy factor c*tau + d.
    Complex cocycle(Complex tau) const;

    bool operator==(const UnimodularMatrix&) const = default;

    std::string to_string() const;

private:
    std::int64_t a_ = 1;
    std::int64_t b_ = 0;
    std::int64_t c_ = 0;
    std::int64_t d_ = 1;
};

// A point of the upper half-plane.
class HalfPlanePoint {
public:
    // Throws DomainError unless the components are finite and Im > 0.
    explicit HalfPlanePoint(Complex value);
    HalfPlanePoint(double re, double im) : HalfPlanePoint(Complex{re, im}) {}

    Complex value() const { return value_; }
    double re() const { return value_.real(); }
    double im() const { return value_.imag(); }

private:
    Complex value_;
};

namespace modular_group {

// rho = (-1 + i sqrt 3) / 2.
HalfPlanePoint rho();

enum class Generator { S, T, TInv };

std::string_view token(Generator g);
UnimodularMatrix matrix(Generator g);

// Product of the generators in written order.
UnimodularMatrix word_product(const std::vector<Generator>& word);

struct ReductionResult {
    UnimodularMatrix gamma;
    HalfPlanePoint reduced;
    // gamma == word_product(word); the last generator applied comes first.
    std::vector<Generator> word;
};

// (a tau + b) / (c tau + d). The imaginary part is formed as Im(tau) / |c tau + d|^2.
HalfPlanePoint moebius_apply(const UnimodularMatrix& g, const HalfPlanePoint& tau);

enum class Domain { Closed, HalfOpen };

// Closed: |z| >= 1, |Re z| <= 1/2. HalfOpen: |z| >= 1, -1/2 <= Re z < 1/2.
bool fd_membership(const HalfPlanePoint& tau, Domain variant);

inline constexpr std::size_t kDefaultReductionCap = 10000;

// Alternate translations into [-1/2, 1/2) and inversions until the point lies
// in the closed fundamental domain. gamma is normalized to c > 0 or (c = 0, a > 0).
ReductionResult reduce_to_fd(const HalfPlanePoint& tau,
                             std::size_t iteration_cap = kDefaultReductionCap);

// Images of the closed fundamental domain under S, ST and ST^-1.
enum class Tile { S, ST, STInv };

bool tile_membership(const HalfPlanePoint& tau, Tile tile);

enum class Region { Fbar, S, ST, STInv, None };

// First region (in the order F, S, ST, ST^-1) containing tau.
Region classify(const HalfPlanePoint& tau);
std::string_view region_name(Region r);

struct CoveringReport {
    std::size_t samples = 0;
    std::vector<Complex> failures;
};

// Uniform samples in |Re| <= 1/2, im_min <= Im <= 3; every sample must lie in
// F or one of the three tiles.
CoveringReport covering_audit(std::size_t sample_count, std::uint64_t seed,
                              double im_min = 1.0 / 3.0);

} // namespace modular_group
} // namespace modulus
