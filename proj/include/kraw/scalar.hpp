// Scalar flavors used throughout the library.
//
// Rational is an exact, always-reduced fraction (GMP mpq). double is the
// approximate flavor. The two are never mixed inside one matrix; the only
// conversion offered is the lossy Rational -> double direction.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "kraw/error.hpp"

namespace kraw {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

template <typename Scalar>
concept KrawScalar = std::is_same_v<Scalar, Rational> || std::is_same_v<Scalar, double>;

/// Entrywise comparison tolerance for the approximate flavor:
/// |a - b| <= atol + rtol * max(|a|, |b|). Ignored for Rational.
struct Tolerance {
  double atol = 1e-12;
  double rtol = 1e-9;
};

inline bool scalar_equal(const Rational& a, const Rational& b, const Tolerance& = {}) {
  return a == b;
}

inline bool scalar_equal(double a, double b, const Tolerance& tol = {}) {
  return std::abs(a - b) <= tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b));
}

/// Parses "a/b" or "a" (optional sign on the numerator). Throws Error(ParseError)
/// on malformed text or a zero denominator. The result is reduced.
Rational parse_rational(std::string_view text);

/// "a/b" for non-integers, "a" for integers.
std::string to_string(const Rational& value);
std::string to_string(double value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }
inline double to_double(double value) { return value; }

template <KrawScalar Scalar>
Scalar from_int(long long value) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(value);
  } else {
    return static_cast<double>(value);
  }
}

template <KrawScalar Scalar>
Scalar ipow(const Scalar& base, int exponent) {
  Scalar result = from_int<Scalar>(1);
  Scalar factor = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result *= factor;
    if (e > 1u) factor *= factor;
  }
  return result;
}

template <KrawScalar Scalar>
Scalar from_integer(const Integer& value) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(value);
  } else {
    return value.convert_to<double>();
  }
}

inline Integer factorial(int n) {
  Integer result = 1;
  for (int k = 2; k <= n; ++k) result *= k;
  return result;
}

template <KrawScalar Scalar>
Scalar factorial_as(int n) {
  return from_integer<Scalar>(factorial(n));
}

/// Throws Error(NonFinite) when value is NaN or infinite.
inline void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NonFinite, std::string("non-finite value in ") + what);
  }
}

}  // namespace kraw
