#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <type_traits>

namespace chshmd {

/// Exact rational number backed by GMP. Expression templates are disabled so
/// that `auto` and std::min/max behave like they do for double.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Parses "p/q", an integer, or a finite decimal ("0.125", "-1.5e-3") into an
/// exact rational. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Returns true when parse_rational would accept `text`.
bool looks_rational(std::string_view text);

/// "p/q" for non-integers, "n" for integers.
std::string to_string(const Rational& v);

template <class T>
T frac(long num, long den) {
  return T(num) / T(den);
}

/// Tolerance used when comparing floating-point quantities.
inline constexpr double kFloatTol = 1e-12;

template <class T>
bool approx_equal(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return (a > b ? a - b : b - a) <= kFloatTol;
  }
}

template <class T>
bool approx_le(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a <= b;
  } else {
    return a <= b + kFloatTol;
  }
}

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

}  // namespace chshmd
