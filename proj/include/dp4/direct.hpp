#pragma once

// Brute-force count of N(B) straight from the two quadrics, without torsor machinery.
// Off the lines x2 != 0, and x1 (x0 + x3) = -x2^2, x0 x3 = x2 x4.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "numberfield.hpp"
#include "parallel.hpp"

namespace dp4 {

struct CountResult {
  FieldTag field = FieldTag::Q;
  Bound B;
  std::int64_t count = 0;
  double elapsed_s = 0;
  std::string method;
  std::vector<ProjPoint> points;  // canonical, sorted; filled on request
};

struct DirectOptions {
  int threads = 1;
  bool reverse = false;        // walk the outer loop downwards
  bool collect_points = false;
  std::int64_t limit = -1;     // -1: module default
};

inline constexpr std::int64_t kDirectLimitQ = 10000;
inline constexpr std::int64_t kDirectLimitQuadratic = 50;

namespace detail {

inline std::vector<std::int64_t> divisors_of_square(std::int64_t n, std::int64_t cap) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) n /= p, ++e;
      f.emplace_back(p, 2 * e);
    }
  if (n > 1) f.emplace_back(n, 2);
  std::vector<std::int64_t> d{1};
  for (auto [p, e] : f) {
    std::size_t sz = d.size();
    for (std::size_t i = 0; i < sz; ++i) {
      std::int64_t v = d[i];
      for (int k = 1; k <= e; ++k) {
        if (v > cap / p) break;
        v *= p;
        d.push_back(v);
      }
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  std::sort(d.begin(), d.end());
  return d;
}

// x with x = 0 mod a, x = s mod b; nullopt when incompatible. Returns (x0, lcm).
inline std::optional<std::pair<i128, i128>> crt0(std::int64_t a, std::int64_t b, std::int64_t s) {
  std::int64_t g = std::gcd(a, b);
  i128 sm = ((static_cast<i128>(s) % b) + b) % b;
  if (sm % g != 0) return std::nullopt;
  // a k = s (mod b)  ->  (a/g) k = s/g (mod b/g)
  std::int64_t ag = a / g, bg = b / g;
  std::int64_t inv = 0;
  if (bg > 1) {
    std::int64_t g0 = ag % bg, g1 = bg, s0 = 1, s1 = 0;
    while (g1 != 0) {
      std::int64_t q = g0 / g1, t = g0 - q * g1;
      g0 = g1, g1 = t;
      t = s0 - q * s1;
      s0 = s1, s1 = t;
    }
    inv = ((s0 % bg) + bg) % bg;
  }
  i128 k = bg > 1 ? (sm / g) % bg * inv % bg : 0;
  i128 l = static_cast<i128>(ag) * b;
  return std::make_pair(static_cast<i128>(a) * k % l, l);
}

// Points with a fixed x2 > 0 over Q.
inline void direct_Q_slice(std::int64_t x2, std::int64_t Bf, bool collect, std::int64_t& count,
                           std::vector<ProjPoint>& pts) {
  const i128 sq = static_cast<i128>(x2) * x2;
  auto divs = divisors(x2);
  for (std::int64_t d1 : divisors_of_square(x2, Bf))
    for (std::int64_t x1 : {d1, -d1}) {
      const std::int64_t s = narrow(-sq / x1);  // x0 + x3
      // x0 in [max(-B, s-B), min(B, s+B)]
      std::int64_t lo = std::max(-Bf, s - Bf), hi = std::min(Bf, s + Bf);
      if (lo > hi) continue;
      for (std::int64_t d : divs) {
        // d = gcd(x0, x2): x0 = 0 (mod d), x3 = s - x0 = 0 (mod x2/d)
        auto sol = crt0(d, x2 / d, s);
        if (!sol) continue;
        auto [r, step] = *sol;
        i128 first = lo + (((r - lo) % step) + step) % step;
        for (i128 x0w = first; x0w <= hi; x0w += step) {
          std::int64_t x0 = static_cast<std::int64_t>(x0w);
          if (std::gcd(x0, x2) != d) continue;
          std::int64_t x3 = s - x0;
          i128 x4w = static_cast<i128>(x0) * x3 / x2;
          if (abs128(x4w) > Bf) continue;
          std::int64_t x4 = static_cast<std::int64_t>(x4w);
          std::int64_t g = std::gcd(std::gcd(std::gcd(x0, x1), std::gcd(x2, x3)), x4);
          if (g != 1) continue;
          ++count;
          if (collect) {
            static const FieldDescriptor Q = make_field(FieldTag::Q);
            pts.push_back(canonicalize(Q, {AlgInt{x0}, AlgInt{x1}, AlgInt{x2}, AlgInt{x3}, AlgInt{x4}}));
          }
        }
      }
    }
}

}  // namespace detail

inline CountResult direct_count_Q(const Bound& B, const DirectOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  std::int64_t limit = opt.limit < 0 ? kDirectLimitQ : opt.limit;
  if (B.to_double() > static_cast<double>(limit))
    throw LimitExceeded("direct_count_Q: B = " + B.str() + " exceeds the limit " + std::to_string(limit));
  CountResult res;
  res.field = FieldTag::Q;
  res.B = B;
  res.method = "direct";
  const std::int64_t Bf = B.num < 0 ? 0 : B.floor();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(std::max<std::int64_t>(Bf, 0)));
  std::vector<std::vector<ProjPoint>> pts(counts.size());
  parallel_for_dynamic(counts.size(), opt.threads, [&](std::size_t i) {
    std::int64_t x2 = opt.reverse ? Bf - static_cast<std::int64_t>(i) : static_cast<std::int64_t>(i) + 1;
    std::size_t slot = static_cast<std::size_t>(x2 - 1);
    detail::direct_Q_slice(x2, Bf, opt.collect_points, counts[slot], pts[slot]);
  });
  for (std::size_t i = 0; i < counts.size(); ++i) {
    res.count += counts[i];
    if (opt.collect_points) res.points.insert(res.points.end(), pts[i].begin(), pts[i].end());
  }
  std::sort(res.points.begin(), res.points.end());
  res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// Guard for the chart argument: scan every integer 5-tuple in [-B, B]^5.
inline std::int64_t full_box_scan_Q(std::int64_t B) {
  if (B > 20) throw LimitExceeded("full_box_scan_Q: B must be <= 20");
  std::int64_t n = 0;
  for (std::int64_t x0 = -B; x0 <= B; ++x0)
    for (std::int64_t x1 = -B; x1 <= B; ++x1)
      for (std::int64_t x2 = -B; x2 <= B; ++x2)
        for (std::int64_t x3 = -B; x3 <= B; ++x3) {
          if (x0 * x1 + x1 * x3 + x2 * x2 != 0) continue;
          for (std::int64_t x4 = -B; x4 <= B; ++x4) {
            if (x0 * x3 != x2 * x4) continue;
            if (x2 == 0 && x0 * x1 == 0 && x0 * x3 == 0 && x1 * x3 == 0) continue;  // lines
            std::int64_t g = std::gcd(std::gcd(std::gcd(x0, x1), std::gcd(x2, x3)), x4);
            if (g == 1) ++n;
          }
        }
  return n / 2;  // +-x
}

// Every point has a primitive representative with max_i |x_i|_v <= b_v, b = (eps sqrt B, sqrt B)
// for real quadratic fields and b = B at the complex place.
inline std::vector<long double> direct_box(const FieldDescriptor& K, const Bound& B) {
  long double b = B.to_ld();
  if (K.is_imaginary()) return {b};
  long double e = std::exp(static_cast<long double>(K.regulator));
  return {e * std::sqrt(b) * (1 + 1e-12L), std::sqrt(b) * (1 + 1e-12L)};
}

inline CountResult direct_count_quadratic(const FieldDescriptor& K, const Bound& B, const DirectOptions& opt = {},
                                          CertStats* stats = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  if (K.degree != 2) throw std::invalid_argument("direct_count_quadratic: field must be quadratic");
  std::int64_t limit = opt.limit < 0 ? kDirectLimitQuadratic : opt.limit;
  if (B.to_double() > static_cast<double>(limit))
    throw LimitExceeded("direct_count_quadratic: B = " + B.str() + " exceeds the limit " + std::to_string(limit));
  CountResult res;
  res.field = K.tag;
  res.B = B;
  res.method = "direct";
  if (B.num < B.den) {
    res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }
  auto box = direct_box(K, B);
  auto elems = enumerate_box(K, box);
  std::vector<AlgInt> with_zero = elems;
  with_zero.push_back(AlgInt{0});
  std::sort(with_zero.begin(), with_zero.end());
  std::set<AlgInt> in_box(with_zero.begin(), with_zero.end());
  if (opt.reverse) std::reverse(elems.begin(), elems.end());
  std::vector<std::vector<ProjPoint>> found(elems.size());
  std::vector<CertStats> st(elems.size());
  parallel_for_dynamic(elems.size(), opt.threads, [&](std::size_t i) {
    const AlgInt x2 = elems[i];
    const AlgInt sq = K.mul(x2, x2);
    for (const AlgInt& x1 : elems) {
      auto s = K.exact_divide(K.neg(sq), x1);
      if (!s) continue;
      for (const AlgInt& x0 : with_zero) {
        AlgInt x3 = K.sub(*s, x0);
        if (!in_box.count(x3)) continue;
        auto x4 = K.exact_divide(K.mul(x0, x3), x2);
        if (!x4 || !in_box.count(*x4)) continue;
        std::array<AlgInt, 5> x{x0, x1, x2, x3, *x4};
        if (!is_content_free(K, x)) continue;
        ProjPoint p = canonicalize(K, x);
        if (!height(K, p, B, CertPolicy::IntervalThenExact, &st[i]).le) continue;
        found[i].push_back(p);
      }
    }
  });
  std::set<ProjPoint> all;
  for (std::size_t i = 0; i < found.size(); ++i) {
    all.insert(found[i].begin(), found[i].end());
    if (stats) stats->merge(st[i]);
  }
  res.count = static_cast<std::int64_t>(all.size());
  if (opt.collect_points) res.points.assign(all.begin(), all.end());
  res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline CountResult direct_count(const FieldDescriptor& K, const Bound& B, const DirectOptions& opt = {}) {
  if (K.is_rational()) return direct_count_Q(B, opt);
  return direct_count_quadratic(K, B, opt);
}

}  // namespace dp4
