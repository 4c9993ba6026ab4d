#pragma once

#include <cstdint>
#include <random>

namespace modulus {

// Seeded sampling helpers. Only the raw 64-bit engine output is used, so the
// streams are identical across standard library implementations.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [lo, hi]; the modulo bias is irrelevant for test sampling.
    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace modulus
