#include "modulus/rational.hpp"

#include <cctype>

#include "modulus/errors.hpp"

namespace modulus {

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!is_integer_literal(num, true) || (slash != std::string_view::npos && !is_integer_literal(den, false))) {
        throw UsageError("malformed rational '" + std::string(text) + "'");
    }
    if (num.front() == '+') {
        num.remove_prefix(1);
    }
    Integer n(std::string(num), 10);
    Integer d(1);
    if (slash != std::string_view::npos) {
        d = Integer(std::string(den), 10);
        if (d == 0) {
            throw UsageError("zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace modulus
