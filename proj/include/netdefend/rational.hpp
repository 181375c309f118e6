#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace netdef {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", plain integers ("7", "-2"), or decimal strings ("3.50").
/// Decimals are converted exactly (3.50 -> 7/2). Throws std::invalid_argument
/// on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

/// Decimal rendering with repeating part in parentheses: 91/3 -> "30.(3)",
/// 7/2 -> "3.5", 11 -> "11".
std::string format_repeating_decimal(const Rational& value);

}  // namespace netdef
