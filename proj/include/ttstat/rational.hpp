#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

namespace ttstat {

// Exact probabilities. The default for every analysis path.
using Rational = mpq_class;

// The two scalar modes supported throughout: exact rational and IEEE double.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool kIsExact = std::same_as<T, Rational>;

Rational make_rational(long num, unsigned long den = 1);

// Accepts "3", "-2", "5/9", "0.01", ".5", "2.5e-3". Decimal input is converted
// exactly (0.01 becomes 1/100, never the nearest double). Throws
// ValidationError on malformed text.
Rational parse_rational(std::string_view text);

// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

double to_double(const Rational& value);

// "5/512", "1", "-3/4".
std::string to_fraction_string(const Rational& value);

// True when the decimal expansion terminates (denominator has only 2s and 5s).
bool has_terminating_decimal(const Rational& value);

// Full decimal expansion when it terminates, otherwise `max_fraction_digits`
// digits after the point, truncated and suffixed with "...".
std::string to_decimal_string(const Rational& value, int max_fraction_digits = 30);

// Rounded to `places` fraction digits, half away from zero. Display only.
std::string to_fixed_string(const Rational& value, int places);

// Rounded to `places` fraction digits, half away from zero.
Rational round_to_places(const Rational& value, int places);

template <Scalar T>
T from_rational(const Rational& value) {
  if constexpr (kIsExact<T>) {
    return value;
  } else {
    return to_double(value);
  }
}

// Equality used for tie and tolerance checks: exact for rationals, relative
// 1e-12 for doubles.
inline bool nearly_equal(const Rational& a, const Rational& b) { return a == b; }
bool nearly_equal(double a, double b);

template <Scalar T>
bool less_or_tied(const T& a, const T& b) {
  return a <= b || nearly_equal(a, b);
}

}  // namespace ttstat
