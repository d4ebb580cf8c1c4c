#pragma once

// Exact rational height bound B = num/den and small integer helpers.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace dp4 {

using i128 = __int128;

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}
inline std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

// floor(sqrt(n)) for n >= 0.
inline std::int64_t isqrt(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// floor(cbrt(n)) for n >= 0.
inline std::int64_t icbrt(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Bound {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Bound() = default;
  Bound(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den <= 0) throw std::invalid_argument("bound denominator must be positive");
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  // Accepts "12", "3/2", "0.5", "1e6", "2.5e3".
  static Bound parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty bound");
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return Bound(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
    bool neg = false;
    std::size_t i = 0;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      i = 1;
    }
    i128 n = 0;
    bool seen_digit = false, after_point = false;
    for (; i < mant.size(); ++i) {
      char c = mant[i];
      if (c == '.') {
        if (after_point) throw std::invalid_argument("bad bound: " + text);
        after_point = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad bound: " + text);
      seen_digit = true;
      n = n * 10 + (c - '0');
      if (after_point) --exp10;
      if (n > INT64_MAX) throw std::invalid_argument("bound too large: " + text);
    }
    if (!seen_digit) throw std::invalid_argument("bad bound: " + text);
    i128 d = 1;
    for (; exp10 > 0; --exp10) n *= 10;
    for (; exp10 < 0; ++exp10) d *= 10;
    if (n > INT64_MAX || d > INT64_MAX) throw std::invalid_argument("bound out of range: " + text);
    return Bound(neg ? -narrow(n) : narrow(n), narrow(d));
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  long double to_ld() const { return static_cast<long double>(num) / den; }
  std::int64_t floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
  bool positive() const { return num > 0; }

  // k <= B for an integer k.
  bool ge_int(i128 k) const { return k * den <= num; }
  // Largest integer n >= 0 with n * factor <= B (factor > 0).
  std::int64_t floor_div(i128 factor) const {
    if (num < 0) return -1;
    return narrow(static_cast<i128>(num) / (factor * den));
  }
  // Largest n >= 0 with n^2 * factor <= B.
  std::int64_t floor_sqrt_div(i128 factor) const {
    if (num < 0) return -1;
    return isqrt(static_cast<i128>(num) / (factor * den));
  }
  // Largest n >= 0 with n^3 * factor <= B.
  std::int64_t floor_cbrt_div(i128 factor) const {
    if (num < 0) return -1;
    return icbrt(static_cast<i128>(num) / (factor * den));
  }

  friend bool operator==(const Bound& a, const Bound& b) { return a.num == b.num && a.den == b.den; }
};

}  // namespace dp4
