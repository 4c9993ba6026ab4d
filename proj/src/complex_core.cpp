#include "modulus/complex_core.hpp"

#include <cmath>
#include <limits>

#include "modulus/errors.hpp"

namespace modulus::complex_core {

Complex complex_exp(Complex z)
{
    const double u = z.real();
    const double v = z.imag();
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw DomainError("complex_exp: non-finite argument");
    }
    const double magnitude = std::exp(u);
    if (std::isinf(magnitude)) {
        throw RangeError("complex_exp: exp(Re z) overflows");
    }
    return {magnitude * std::cos(v), magnitude * std::sin(v)};
}

Complex principal_log(Complex z)
{
    const double u = z.real();
    const double v = z.imag();
    if (u == 0.0 && v == 0.0) {
        throw DomainError("principal_log: z = 0");
    }
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw DomainError("principal_log: non-finite argument");
    }
    const double modulus = std::log(std::hypot(u, v));
    double arg;
    if (u > 0.0) {
        arg = std::atan(v / u);
    } else if (u < 0.0 && v > 0.0) {
        arg = kPi / 2.0 - std::atan(u / v);
    } else if (u < 0.0 && v < 0.0) {
        arg = -kPi / 2.0 - std::atan(u / v);
    } else if (u < 0.0) {
        // negative real axis (v = +0 or -0): the (-pi, pi] cut keeps +pi
        arg = kPi;
    } else {
        arg = v > 0.0 ? kPi / 2.0 : -kPi / 2.0;
    }
    return {modulus, arg};
}

Interval support(RestrictedFn f)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (f) {
    case RestrictedFn::ExpUnit: return {0.0, 1.0};
    case RestrictedFn::LogOneTwo: return {1.0, 2.0};
    case RestrictedFn::SinPi:
    case RestrictedFn::CosPi: return {-kPi, kPi};
    case RestrictedFn::ArctanUnit: return {-1.0, 1.0};
    case RestrictedFn::FullExp:
    case RestrictedFn::FullLog: return {-inf, inf};
    }
    return {0.0, 0.0};
}

std::string_view name(RestrictedFn f)
{
    switch (f) {
    case RestrictedFn::ExpUnit: return "exp";
    case RestrictedFn::LogOneTwo: return "log";
    case RestrictedFn::SinPi: return "sin";
    case RestrictedFn::CosPi: return "cos";
    case RestrictedFn::ArctanUnit: return "arctan";
    case RestrictedFn::FullExp: return "Exp";
    case RestrictedFn::FullLog: return "Log";
    }
    return "?";
}

double restricted_eval(RestrictedFn f, double x)
{
    if (f == RestrictedFn::FullExp) {
        return std::exp(x);
    }
    if (f == RestrictedFn::FullLog) {
        return x > 0.0 ? std::log(x) : 0.0;
    }
    const Interval iv = support(f);
    if (!(x >= iv.lo && x <= iv.hi)) {
        return 0.0;
    }
    switch (f) {
    case RestrictedFn::ExpUnit: return std::exp(x);
    case RestrictedFn::LogOneTwo: return std::log(x);
    case RestrictedFn::SinPi: return std::sin(x);
    case RestrictedFn::CosPi: return std::cos(x);
    case RestrictedFn::ArctanUnit: return std::atan(x);
    default: return 0.0;
    }
}

double arctan_reflection_residual(double x)
{
    if (x == 0.0) {
        throw DomainError("arctan_reflection_residual: x = 0");
    }
    // (-1)^{sign(x)} read as sgn(x): the only reading for which the identity holds
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    return std::abs(std::atan(1.0 / x) - (sgn * kPi / 2.0 - std::atan(x)));
}

} // namespace modulus::complex_core
