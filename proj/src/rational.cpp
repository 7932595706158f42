#include "toursid/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "toursid/error.hpp"

namespace toursid {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer_text(s)) {
    throw Error("InvalidNumber", "not an integer: '" + std::string(s) + "'");
  }
  std::string text(s);
  if (text[0] == '+') text.erase(0, 1);
  return BigInt(text, 10);
}

Rational parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    auto exp_text = s.substr(e + 1);
    exponent = parse_integer(exp_text).get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw Error("InvalidNumber", "not a number: '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) {
    throw Error("InvalidNumber", "not a number: '" + std::string(s) + "'");
  }
  Rational value{BigInt(digits, 10)};
  long shift = exponent - frac_digits;
  BigInt ten_pow = pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    value /= Rational(ten_pow);
  } else {
    value *= Rational(ten_pow);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error("InvalidNumber", "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error("InvalidNumber", "zero denominator: '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (is_integer_text(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

Rational pow(const Rational& base, unsigned exponent) { return ipow(base, exponent); }

BigInt pow(const BigInt& base, unsigned exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error("InvalidNumber", "cannot rationalize a non-finite value");
  if (max_den < 1) max_den = 1;
  // Exact binary value of x, then walk its continued fraction.
  Rational target(x);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = target;
  const BigInt limit(static_cast<long>(max_den));
  while (true) {
    BigInt a = rest.get_num() / rest.get_den();
    if (rest < 0 && a * rest.get_den() != rest.get_num()) a -= 1;  // floor
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > limit) {
      // Largest semiconvergent that still fits, compared with the last convergent.
      BigInt k = (limit - q0) / q1;
      Rational semi(BigInt(k * p1 + p0), BigInt(k * q1 + q0));
      Rational conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(Rational(semi - target)) < abs(Rational(conv - target)) ? semi : conv;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational result(p1, q1);
  result.canonicalize();
  return result;
}

}  // namespace toursid
