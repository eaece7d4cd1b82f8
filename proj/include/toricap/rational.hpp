#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricap/error.hpp"

namespace toricap {

using BigInt = boost::multiprecision::cpp_int;
// Always reduced, denominator positive.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Floor division on integers; cpp_int division truncates toward zero.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

inline BigInt floor(const Rational& r) { return floor_div(num(r), den(r)); }
inline BigInt ceil(const Rational& r) { return ceil_div(num(r), den(r)); }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(BigInt(abs(a)), BigInt(abs(b)));
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const BigInt& n) { return n.str(); }

// Fixed-point decimal rounded half away from zero, computed exactly.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(r) * scale + Rational(1, 2);
  BigInt q = floor(scaled);
  std::string body = BigInt(q / scale).str();
  if (digits > 0) {
    std::string frac = BigInt(q % scale).str();
    body += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return (r < 0 && q != 0 ? "-" : "") + body;
}

// Parses "n" or "n/d" with optional sign on the numerator.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s, bool allow_sign) -> BigInt {
    std::size_t i = 0;
    bool neg = false;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw Error(ErrorCode::ParseError, "malformed number '" + std::string(s) + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw Error(ErrorCode::ParseError, "malformed number '" + std::string(s) + "'");
      }
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  BigInt n = parse_int(text.substr(0, slash), true);
  BigInt d = parse_int(text.substr(slash + 1), false);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

// Narrowing for the machine-integer kernels; throws instead of wrapping.
inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::Overflow, "value " + v.str() + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace toricap
