#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

// Boost 1.74's mixed rational/integer operator== forwards to the reversed
// form, which C++20 rewrites back into itself and recurses forever. These
// exact-match overloads win overload resolution and end the cycle.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) {
    return a == static_cast<std::int64_t>(b);
}
}  // namespace boost

namespace glyphmcda {

using Rational = boost::rational<std::int64_t>;

/// Parses "4.5", "-0.25", "3", or "29/7" into an exact rational.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text: terminating values as decimals without trailing zeros
/// ("4.5", "7", "0.125"), anything else as "p/q".
std::string to_canonical_string(const Rational& value);

/// Half-up rounding to a fixed number of decimals ("4.66", "5.00").
std::string to_fixed(const Rational& value, int decimals = 2);

/// Weight-style rendering: decimal without trailing zeros, falls back to
/// 2 dp for non-terminating values.
std::string to_short_string(const Rational& value);

inline double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

/// floor(value + 1/2)
std::int64_t round_half_up(const Rational& value);

}  // namespace glyphmcda
