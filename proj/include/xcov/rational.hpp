#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace xcov {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator. Every limit-side moment and cumulant is one of these.
using ExactScalar = boost::multiprecision::cpp_rational;

/// Parses "3", "-2.50", "1/3", "+0.4e-2" exactly. Throws ParseError.
ExactScalar parse_exact(std::string_view text);

/// "num/den", or just "num" when the value is an integer.
std::string to_fraction_string(const ExactScalar& value);

double to_double(const ExactScalar& value);

/// printf("%.12g"), the float format used in every CSV this project writes.
std::string format_g12(double value);

ExactScalar ipow(const ExactScalar& base, unsigned exponent);

BigInt binomial(unsigned n, unsigned k);

}  // namespace xcov
