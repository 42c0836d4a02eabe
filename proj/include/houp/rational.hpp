#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace houp {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction. Kept canonical: lowest terms, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "n", "n/d" or decimal text such as "1.25" into an exact fraction.
inline Rational rational_from_string(const std::string& text) {
  try {
    if (text.find('.') == std::string::npos) return Rational(text);
    const auto dot = text.find('.');
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt num(digits);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
}

/// Exact binary expansion of a finite double.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  if (exp >= 0) return Rational(BigInt(scaled) << exp);
  return Rational(BigInt(scaled), BigInt(1) << -exp);
}

}  // namespace houp
