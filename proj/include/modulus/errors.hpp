#pragma once

#include <stdexcept>
#include <string>

namespace modulus {

// Argument outside the mathematical domain of an operation (log 0, |q| >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Result not representable in double precision (overflow / underflow to zero).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Evaluation would lose all significant digits.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed request: unknown symbol, mismatched variable counts, bad indices.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A bounded loop failed to converge. Should be unreachable.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace modulus
