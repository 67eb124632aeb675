#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace naryder {

using BigInt = boost::multiprecision::mpz_int;

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator; arithmetic is exact. Expression templates are
/// disabled so the type behaves as a plain value inside Eigen expressions.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Renders "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Exact square root when r is the square of a rational; nullopt otherwise.
/// Negative input never has a rational square root.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace naryder
