#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace toursid {

using Rational = mpq_class;
using BigInt = mpz_class;

// Always "p/q", including q = 1, so JSON consumers see one shape.
std::string to_string(const Rational& q);

// Accepts "p/q", "p", or a decimal such as "-0.99" or "1e-2"; decimals are
// converted exactly (0.99 -> 99/100).
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Best rational approximation with denominator <= max_den (continued
// fractions with semiconvergents).
Rational rationalize(double x, std::int64_t max_den);

template <class T>
inline constexpr bool is_exact_v = !std::is_floating_point_v<T>;

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(q.get_d());
  } else {
    return T(q);
  }
}

template <class T>
T abs_value(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return x < 0 ? -x : x;
  } else {
    return abs(x);
  }
}

// Integer power for any scalar (used for n^v thresholds and densities).
template <class T>
T ipow(const T& base, unsigned exponent) {
  T result(1);
  T b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace toursid
