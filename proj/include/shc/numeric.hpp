#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "shc/errors.hpp"

namespace shc {

/// Exact arbitrary-precision rational.  Configs may supply any number as a
/// "p/q" string; those values flow through the solver and oracle templates
/// with no rounding at all.
using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision integer, used for periodic-point counts that overflow
/// 64 bits almost immediately (n * n! style sequences).
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// x^n by binary exponentiation.  n may be negative, in which case x must be
/// nonzero (exactly, for Rational; to double precision otherwise).
template <class T>
T scalar_pow(T x, long n) {
    if (n < 0) {
        if (x == T(0)) throw InvalidInputError("scalar_pow: zero base with negative exponent");
        return scalar_pow(T(1) / x, -n);
    }
    T result(1);
    while (n > 0) {
        if (n & 1) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

template <class T>
T scalar_abs(const T& x) {
    return x < T(0) ? T(-x) : x;
}

/// How close the center multiplier product may come to 1 before the loop is
/// treated as resonant.  Exact arithmetic admits only exact resonance.
template <class T>
constexpr T resonance_tolerance() {
    return T(0);
}
template <>
constexpr double resonance_tolerance<double>() {
    return 1e-12;
}

namespace detail {

/// Reads a base-10 integer.  Boost would treat a leading zero as an octal
/// prefix, so signs and leading zeros are normalized away first.
inline BigInt decimal_integer(std::string digits) {
    bool negative = false;
    size_t start = 0;
    if (start < digits.size() && (digits[start] == '+' || digits[start] == '-')) {
        negative = digits[start] == '-';
        ++start;
    }
    size_t nonzero = digits.find_first_not_of('0', start);
    if (nonzero == std::string::npos) nonzero = digits.size() - (digits.size() > start ? 1 : 0);
    digits.erase(0, nonzero);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInputError("not a base-10 integer");
    BigInt value(digits);
    return negative ? BigInt(-value) : value;
}

} // namespace detail

/// Parses "p/q", "p", or a decimal string ("0.25", "-1.5e-3") into an exact
/// rational.  Decimal strings are read as exact decimal fractions.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InvalidInputError("parse_rational: empty string");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num = detail::decimal_integer(text.substr(0, slash));
            BigInt den = detail::decimal_integer(text.substr(slash + 1));
            if (den == 0) throw InvalidInputError("parse_rational: zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        auto exp_pos = text.find_first_of("eE");
        std::string mantissa = exp_pos == std::string::npos ? text : text.substr(0, exp_pos);
        long exponent = exp_pos == std::string::npos ? 0 : std::stol(text.substr(exp_pos + 1));
        auto dot = mantissa.find('.');
        if (dot != std::string::npos) {
            exponent -= static_cast<long>(mantissa.size() - dot - 1);
            mantissa.erase(dot, 1);
        }
        Rational value{detail::decimal_integer(mantissa)};
        value *= scalar_pow(Rational(10), exponent);
        return value;
    } catch (const std::exception& e) {
        throw InvalidInputError("parse_rational: cannot parse '" + text + "': " + e.what());
    }
}

/// Canonical text form: "p/q" in lowest terms, or plain "p" for integers.
inline std::string format_rational(const Rational& value) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Every finite double is a dyadic rational, so this conversion is exact.
inline Rational exact_rational(double value) {
    if (!std::isfinite(value)) throw InvalidInputError("exact_rational: non-finite value");
    return Rational(value);
}

} // namespace shc
