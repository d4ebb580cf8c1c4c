#pragma once

// The finite-place Euler product prod_p (1 - 1/Np)^6 (1 + 6/Np + 1/Np^2) over prime ideals.
// Every factor is below 1, and |log f(x)| <= 21 x^2 for 0 < x <= 1/11, so with at most
// [K:Q] prime ideals of each norm the product over Np > P lies in [exp(-21 [K:Q] / P), 1].

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "interval.hpp"
#include "numberfield.hpp"

namespace dp4 {

inline mpq_class euler_factor(const mpz_class& q) {
  if (q < 2) throw std::invalid_argument("euler_factor: norm must be at least 2");
  mpq_class x(1, 1);
  x /= q;
  mpq_class one_minus = 1 - x, p6 = 1;
  for (int i = 0; i < 6; ++i) p6 *= one_minus;
  return p6 * (1 + 6 * x + x * x);
}

inline mpq_class euler_factor(std::int64_t q) { return euler_factor(mpz_class(static_cast<long>(q))); }

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

// (D/p) for a field discriminant D and a rational prime p.
inline int kronecker(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    std::int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  std::int64_t a = ((D % p) + p) % p;
  if (a == 0) return 0;
  // Euler's criterion
  i128 r = 1, b = a;
  std::int64_t e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Norms of the prime ideals of K with norm <= P, in increasing order (with multiplicity).
inline std::vector<std::int64_t> prime_ideal_norms(const FieldDescriptor& K, std::int64_t P) {
  std::vector<std::int64_t> out;
  for (std::int64_t p : primes_up_to(P)) {
    if (K.is_rational()) {
      out.push_back(p);
      continue;
    }
    int chi = kronecker(K.disc, p);
    if (chi == 1) {
      out.push_back(p);
      out.push_back(p);
    } else if (chi == 0) {
      out.push_back(p);
    } else if (p <= P / p) {
      out.push_back(p * p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct EulerProduct {
  std::int64_t P = 0;
  std::size_t factors = 0;
  double partial_lo = 0, partial_hi = 0;  // enclosure of the product over Np <= P
  double value = 0;                       // midpoint of the partial product
  double tail_lo = 0, tail_hi = 0;        // enclosure of the full product
};

inline EulerProduct finite_product(const FieldDescriptor& K, std::int64_t P, mpfr_prec_t prec = kStartPrecision) {
  if (P < 11) throw std::invalid_argument("finite_product: P must be at least 11");
  EulerProduct e;
  e.P = P;
  Interval prod = Interval::from_int(1, prec);
  const Interval one = Interval::from_int(1, prec), six = Interval::from_int(6, prec);
  for (std::int64_t q : prime_ideal_norms(K, P)) {
    Interval x = Interval::from_ratio(1, q, prec);
    Interval y = one - x;
    Interval y2 = y * y;
    Interval y6 = y2 * y2 * y2;
    prod = prod * (y6 * (one + six * x + x * x));
    ++e.factors;
  }
  Interval tail = Interval::from_ratio(-21 * K.degree, P, prec).exp();
  e.partial_lo = prod.lo_d();
  e.partial_hi = prod.hi_d();
  e.value = prod.mid_d();
  e.tail_lo = (prod * tail).lo_d();
  e.tail_hi = e.partial_hi;
  return e;
}

}  // namespace dp4
