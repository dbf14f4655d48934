#include "ttstat/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ttstat/errors.hpp"

namespace ttstat {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  auto fail = [&] {
    return ValidationError("not a number: '" + std::string(original) + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw fail();
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw fail();
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(text)) throw fail();
    digits = std::string(text);
  }
  Rational result{mpz_class(digits, 10)};
  if (exponent > 0) {
    result *= pow10(static_cast<unsigned long>(exponent));
  } else if (exponent < 0) {
    result /= pow10(static_cast<unsigned long>(-exponent));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational make_rational(long num, unsigned long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ValidationError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), original);
    Rational den = parse_decimal(text.substr(slash + 1), original);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(original) + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }
  return parse_decimal(text, original);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_fraction_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool has_terminating_decimal(const Rational& value) {
  mpz_class den = value.get_den();
  for (unsigned long f : {2UL, 5UL}) {
    while (mpz_divisible_ui_p(den.get_mpz_t(), f) != 0) den /= f;
  }
  return den == 1;
}

namespace {

// |value| split into integer part and the digits of the fraction (up to limit).
std::string format_abs(const mpz_class& num, const mpz_class& den, int limit,
                       bool& truncated) {
  mpz_class whole = num / den;
  mpz_class rem = num % den;
  std::string out = whole.get_str();
  if (rem == 0) {
    truncated = false;
    return out;
  }
  out += '.';
  int produced = 0;
  while (rem != 0 && produced < limit) {
    rem *= 10;
    mpz_class digit = rem / den;
    rem %= den;
    out += static_cast<char>('0' + digit.get_ui());
    ++produced;
  }
  truncated = rem != 0;
  return out;
}

}  // namespace

std::string to_decimal_string(const Rational& value, int max_fraction_digits) {
  const bool negative = sgn(value) < 0;
  mpz_class num = abs(value.get_num());
  bool truncated = false;
  int limit = has_terminating_decimal(value) ? std::numeric_limits<int>::max()
                                             : max_fraction_digits;
  std::string out = format_abs(num, value.get_den(), limit, truncated);
  if (truncated) out += "...";
  return negative ? "-" + out : out;
}

Rational round_to_places(const Rational& value, int places) {
  const mpz_class scale = pow10(static_cast<unsigned long>(places));
  Rational scaled = abs(value) * scale;
  // floor(x + 1/2) for the magnitude rounds half away from zero.
  Rational shifted = scaled + Rational(1, 2);
  mpz_class rounded = shifted.get_num() / shifted.get_den();
  Rational result(rounded, scale);
  result.canonicalize();
  return sgn(value) < 0 ? Rational(-result) : result;
}

std::string to_fixed_string(const Rational& value, int places) {
  Rational rounded = round_to_places(value, places);
  const mpz_class scale = pow10(static_cast<unsigned long>(places));
  mpz_class scaled = abs(rounded.get_num()) * scale / rounded.get_den();
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
  }
  std::string out = digits;
  if (places > 0) out.insert(out.size() - static_cast<std::size_t>(places), ".");
  return (sgn(rounded) < 0 ? "-" : "") + out;
}

bool nearly_equal(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace ttstat
