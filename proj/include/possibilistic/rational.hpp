#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace possibilistic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::optional<Integer> parse_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Integer out = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace detail

/// Parses "0", "1", ".5", "0.25", "12" or a fraction "p/q". No sign, no exponent.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_digits(text.substr(0, slash));
    auto den = detail::parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  Integer num = 0;
  if (!whole.empty()) {
    auto w = detail::parse_digits(whole);
    if (!w) return std::nullopt;
    num = *w;
  }
  Integer den = 1;
  if (dot != std::string_view::npos) {
    if (frac.empty()) return std::nullopt;
    auto f = detail::parse_digits(frac);
    if (!f) return std::nullopt;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      num *= 10;
      den *= 10;
    }
    num += *f;
  }
  return Rational(num, den);
}

/// Formats in the compact style used for scale labels: "0", "1", ".5", ".25", "1.5".
/// Values without a terminating decimal expansion come out as "p/q".
inline std::string format_rational(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  Integer rest = den;
  while (rest % 2 == 0) rest /= 2;
  while (rest % 5 == 0) rest /= 5;
  if (rest != 1) return num.str() + "/" + den.str();

  Integer whole = num / den;
  Integer frac = num % den;
  std::string out = whole == 0 && frac != 0 ? std::string{} : whole.str();
  if (frac != 0) {
    out += '.';
    while (frac != 0) {
      frac *= 10;
      out += static_cast<char>('0' + static_cast<int>(frac / den));
      frac %= den;
    }
  }
  return out;
}

}  // namespace possibilistic
