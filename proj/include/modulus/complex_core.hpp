#pragma once

#include <complex>
#include <string_view>

namespace modulus {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace complex_core {

// exp(u + iv) = e^u (cos v + i sin v). Throws RangeError when e^u overflows.
Complex complex_exp(Complex z);

// Principal logarithm, Im in (-pi, pi]. The three open regions u > 0,
// (u < 0, v > 0) and (u < 0, v < 0) use the arctangent formulas
//   log|z| + i atan(v/u),  log|z| + i(pi/2 - atan(u/v)),  log|z| + i(-pi/2 - atan(u/v))
// verbatim; the remaining rays are filled in with their limiting values.
// Throws DomainError at z = 0.
Complex principal_log(Complex z);

// Restricted elementary functions: the underlying function on a closed
// interval, exactly 0.0 elsewhere.
enum class RestrictedFn {
    ExpUnit,      // exp on [0, 1]
    LogOneTwo,    // log on [1, 2]
    SinPi,        // sin on [-pi, pi]
    CosPi,        // cos on [-pi, pi]
    ArctanUnit,   // arctan on [-1, 1]
    FullExp,      // unrestricted exp
    FullLog,      // log x for x > 0, 0 for x <= 0
};

struct Interval {
    double lo;
    double hi;
};

// Support of a restricted function. FullExp/FullLog report the whole line.
Interval support(RestrictedFn f);
std::string_view name(RestrictedFn f);

double restricted_eval(RestrictedFn f, double x);

// Field inverse with 0^-1 = 0.
inline double field_inverse(double x) { return x == 0.0 ? 0.0 : 1.0 / x; }

// |atan(1/x) - (sgn(x) pi/2 - atan x)|. Throws DomainError at x = 0.
double arctan_reflection_residual(double x);

} // namespace complex_core
} // namespace modulus
