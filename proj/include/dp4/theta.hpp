#pragma once

// Local densities at a prime of norm q. J is a subset of {1,...,5} (bit i-1 set for a_i),
// the set of indices with p | a_i.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dp4 {

using Subset = unsigned;  // bitmask over {1,...,5}

inline constexpr Subset bit(int i) { return 1u << (i - 1); }

inline std::string subset_str(Subset J) {
  std::string s = "{";
  for (int i = 1; i <= 5; ++i)
    if (J & bit(i)) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

// theta_0: 1 when the a_i divisible by p are allowed by coprimality (empty, one index, or
// an adjacent pair {3,4} or {4,5}).
inline int theta0(Subset J) {
  if (J >= 32) throw std::invalid_argument("theta0: J must be a subset of {1..5}");
  if (J == 0 || (J & (J - 1)) == 0) return 1;
  return (J == (bit(3) | bit(4)) || J == (bit(4) | bit(5))) ? 1 : 0;
}

inline mpq_class theta1(Subset J, const mpz_class& q) {
  if (J >= 32) throw std::invalid_argument("theta1: J must be a subset of {1..5}");
  mpq_class x(1, 1);
  x /= q;
  mpq_class u = 1 - x;
  if (J == 0) return u * u * (1 + 2 * x);
  if (J == bit(1) || J == bit(2)) return u * u * (1 + x);
  if (J == bit(3) || J == bit(5)) return u * u;
  if (J == bit(4) || J == (bit(3) | bit(4)) || J == (bit(4) | bit(5))) return u * u * u;
  return 0;
}

struct MobiusCheck {
  mpq_class lhs, rhs;
  int terms = 0;  // admissible tuples
  bool ok() const { return lhs == rhs; }
};

// theta_0(J) * sum over (d67, d68, d69, d6, d7, d8), each 1 or p, of mu / N(d6 d7 d8 d67 d68 d69
// (d67 cap d68 d69)), against theta_1(J).
inline MobiusCheck mobius_local_check(const mpz_class& q, Subset J) {
  if (J >= 32) throw std::invalid_argument("mobius_local_check: J must be a subset of {1..5}");
  auto meets = [&](std::initializer_list<int> idx) {
    for (int i : idx)
      if (J & bit(i)) return true;
    return false;
  };
  MobiusCheck r;
  mpq_class sum = 0;
  for (unsigned t = 0; t < 64; ++t) {
    int e67 = t & 1, e68 = (t >> 1) & 1, e69 = (t >> 2) & 1, e6 = (t >> 3) & 1, e7 = (t >> 4) & 1, e8 = (t >> 5) & 1;
    if (e67 && J != 0) continue;
    if (e68 && meets({1, 3, 4, 5})) continue;
    if (e69 && meets({2, 3, 4, 5})) continue;
    if (e68 && e69) continue;
    if (e6 && !meets({4, 5})) continue;
    if (e7 && !meets({1, 2, 3, 4})) continue;
    if (e8 && !meets({3, 4, 5})) continue;
    int n = e6 + e7 + e8 + e67 + e68 + e69 + std::max(e67, e68 + e69);
    int k = e6 + e7 + e8 + e67 + e68 + e69;
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    mpq_class term(1, 1);
    term /= den;
    sum += (k % 2 ? -term : term);
    ++r.terms;
  }
  r.lhs = theta0(J) * sum;
  r.rhs = theta1(J, q);
  return r;
}

// sum_J theta_1(J) x^|J| (1 - x)^(5 - |J|), x = 1/q: the average of theta_1 over a' in
// (O_K / p)^5.
inline mpq_class theta1_mean(const mpz_class& q) {
  mpq_class x(1, 1);
  x /= q;
  mpq_class s = 0;
  for (Subset J = 0; J < 32; ++J) {
    int k = __builtin_popcount(J);
    mpq_class w = 1;
    for (int i = 0; i < k; ++i) w *= x;
    for (int i = k; i < 5; ++i) w *= 1 - x;
    s += theta1(J, q) * w;
  }
  return s;
}

}  // namespace dp4
