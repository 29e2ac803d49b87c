#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace pgcl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Renders a rational as "num/den", or just "num" when the denominator is 1.
std::string rat_to_string(const Rat& r);

/// Decimal digit string to integer; immune to the octal reading that
/// leading zeros trigger in cpp_int's own parser.
Int int_from_digits(const std::string& digits);

/// Parses "3/4", "0.25" or "2" into an exact rational. Decimal strings are
/// read exactly (finite expansions only). Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergents).
Rat rationalize(double x, const Int& max_den);

/// Exact rational equal to the double's binary value.
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

}  // namespace pgcl
