#pragma once

// Universal torsor: a1 a9 + a2 a8 + a3 a4^2 a5^3 a7 = 0 with coprimality along the
// non-edges of the configuration graph, the map Psi to the surface, the lifted height and
// the enumeration of the counting set M(B).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "certify.hpp"
#include "geometry.hpp"
#include "numberfield.hpp"
#include "parallel.hpp"

namespace dp4 {

using TorsorPoint = std::array<AlgInt, 9>;  // a1..a9 at indices 0..8

inline std::string to_string(const TorsorPoint& t) {
  std::string s = "(";
  for (int i = 0; i < 9; ++i) s += (i ? "," : "") + to_string(t[i]);
  return s + ")";
}

struct DegreeMatrix {
  // m(j) in Z^6; unit u = (u0, ..., u5) acts by a_j -> u^{m(j)} a_j
  static constexpr std::array<std::array<int, 6>, 9> m = {{
      {0, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 1, 0},
      {0, 1, -1, 0, 0, 0},
      {0, 0, 1, -1, 0, 0},
      {0, 0, 0, 1, 0, 0},
      {1, -1, 0, 0, -1, -1},
      {1, -1, -1, -1, 0, 0},
      {1, 0, 0, 0, -1, 0},
      {1, 0, 0, 0, 0, -1},
  }};

  // Rank over F2 of the block formed by m(1), ..., m(6).
  static bool mod2_block_invertible() {
    std::array<unsigned, 6> rows{};
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        if (m[j][k] & 1) rows[j] |= 1u << k;
    int rank = 0;
    for (int bit = 0; bit < 6; ++bit) {
      int piv = -1;
      for (int r = rank; r < 6; ++r)
        if (rows[r] >> bit & 1) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[rank], rows[piv]);
      for (int r = 0; r < 6; ++r)
        if (r != rank && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
      ++rank;
    }
    return rank == 6;
  }
};

inline TorsorPoint apply_unit_action(const FieldDescriptor& K, const TorsorPoint& T, const std::array<AlgInt, 6>& u) {
  TorsorPoint r = T;
  for (int j = 0; j < 9; ++j)
    for (int k = 0; k < 6; ++k) {
      int e = DegreeMatrix::m[j][k];
      if (e == 0) continue;
      AlgInt f = e > 0 ? u[k] : K.unit_inverse(u[k]);
      r[j] = K.mul(r[j], K.pow(f, static_cast<unsigned>(e > 0 ? e : -e)));
    }
  return r;
}

inline Wide wide(const AlgInt& a) { return Wide{a.x, a.y}; }

// c = a3 a4^2 a5^3 a7
inline AlgInt torsor_c(const FieldDescriptor& K, const TorsorPoint& T) {
  AlgInt a42 = K.mul(T[3], T[3]);
  AlgInt a53 = K.mul(K.mul(T[4], T[4]), T[4]);
  return K.mul(K.mul(K.mul(T[2], a42), a53), T[6]);
}

inline bool torsor_equation_holds(const FieldDescriptor& K, const TorsorPoint& T) {
  AlgInt s = K.add(K.add(K.mul(T[0], T[8]), K.mul(T[1], T[7])), torsor_c(K, T));
  return s.is_zero();
}

inline bool coprimality_holds(const FieldDescriptor& K, const TorsorPoint& T) {
  static const DynkinData D = dynkin_data();
  for (auto [i, j] : D.nonadjacent)
    if (!coprime(K, T[i - 1], T[j - 1])) return false;
  return true;
}

inline bool is_valid_torsor_point(const FieldDescriptor& K, const TorsorPoint& T) {
  for (int j = 0; j < 7; ++j)
    if (T[j].is_zero()) return false;
  return torsor_equation_holds(K, T);
}

// The five coordinates of Psi(T) before canonicalization.
inline std::array<Wide, 5> psi_wide(const FieldDescriptor& K, const TorsorPoint& a) {
  auto M = [&](std::initializer_list<int> idx) {
    Wide r{1, 0};
    for (int i : idx) r = K.mul(r, wide(a[i - 1]));
    return r;
  };
  return {M({2, 3, 4, 5, 6, 7, 8}), M({1, 1, 2, 2, 3, 3, 4, 6, 6, 6}), M({1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7}),
          M({1, 3, 4, 5, 6, 7, 9}), M({7, 8, 9})};
}

inline std::array<AlgInt, 5> psi_raw(const FieldDescriptor& K, const TorsorPoint& T) {
  auto w = psi_wide(K, T);
  std::array<AlgInt, 5> r;
  for (int i = 0; i < 5; ++i) r[i] = AlgInt{narrow(w[i].x), narrow(w[i].y)};
  return r;
}

inline ProjPoint psi(const FieldDescriptor& K, const TorsorPoint& T) {
  if (!is_valid_torsor_point(K, T)) throw std::invalid_argument("psi: not a valid torsor point " + to_string(T));
  return canonicalize(K, psi_raw(K, T));
}

// N~_v for (a1, ..., a8) with a1 != 0 (the fifth monomial divided by a1 as a real number).
inline Interval tilde_N(const FieldDescriptor& K, std::span<const AlgInt> a, int v, mpfr_prec_t prec = kStartPrecision) {
  if (a.size() < 8 || a[0].is_zero()) throw std::invalid_argument("tilde_N needs a1..a8 with a1 != 0");
  auto M = [&](std::initializer_list<int> idx) {
    Wide r{1, 0};
    for (int i : idx) r = K.mul(r, wide(a[i - 1]));
    return r;
  };
  Wide c = M({3, 4, 4, 5, 5, 5, 7});
  Wide c28 = K.mul(wide(a[1]), wide(a[7]));
  Wide inner{c.x + c28.x, c.y + c28.y};  // x3 x4^2 x5^3 x7 + x2 x8
  Wide m4 = K.mul(M({3, 4, 5, 6, 7}), inner);
  Wide num = K.mul(M({7, 8}), inner);  // x2 x7 x8^2 + x3 x4^2 x5^3 x7^2 x8
  Interval best = max(max(K.abs_v_interval(M({2, 3, 4, 5, 6, 7, 8}), v, prec),
                          K.abs_v_interval(M({1, 1, 2, 2, 3, 3, 4, 6, 6, 6}), v, prec)),
                      max(K.abs_v_interval(M({1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7}), v, prec), K.abs_v_interval(m4, v, prec)));
  Interval fifth = K.abs_v_interval(num, v, prec) / K.abs_v_interval(wide(a[0]), v, prec);
  return max(best, fifth);
}

inline bool height_condition(const FieldDescriptor& K, const TorsorPoint& T, const Bound& B,
                             CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  if (B.num <= 0) return false;
  auto w = psi_wide(K, T);
  return product_of_maxima_le(K, w, B, policy, stats);
}

// Real quadratic fundamental domain for (a6, a7, a8): eps^k0 <= N~_1 / N~_2 < eps^(k0 + 6)
// with k0 = 0, or 3 for the shifted window.
inline bool in_F0(const FieldDescriptor& K, std::span<const Wide> psi_vals, AssociateWindow w,
                  CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  if (!K.is_real_quadratic()) return true;
  int k0 = w.shifted ? 3 : 0;
  return maxima_ratio_ge(K, psi_vals, k0, policy, stats) && !maxima_ratio_ge(K, psi_vals, k0 + 6, policy, stats);
}

// Membership in the counting set's domain: a1..a5 canonical associates and the F0 condition.
inline bool in_M_domain(const FieldDescriptor& K, const TorsorPoint& T, AssociateWindow w = {},
                        CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  for (int j = 0; j < 5; ++j)
    if (!is_canonical_associate(K, T[j], w)) return false;
  auto vals = psi_wide(K, T);
  return in_F0(K, vals, w, policy, stats);
}

// Full-orbit canonicity: additionally a6 normalized by the roots of unity.
inline bool in_fundamental_domain(const FieldDescriptor& K, const TorsorPoint& T, AssociateWindow w = {},
                                  CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  if (!is_valid_torsor_point(K, T)) throw std::invalid_argument("in_fundamental_domain: invalid torsor point");
  return in_M_domain(K, T, w, policy, stats) && in_mu_window(K, T[5], w);
}

// ---- loop bounds ----------------------------------------------------------------------

// Per-place caps on every monomial: N~_v <= C_v.
inline std::vector<long double> monomial_caps(const FieldDescriptor& K, const Bound& B, AssociateWindow w) {
  long double b = B.to_ld();
  if (!K.is_real_quadratic()) return {b};
  long double e = std::exp(K.regulator), s = std::sqrt(b);
  long double phi = w.shifted ? 0.5L : 0.0L;
  return {std::pow(e, 3 * phi + 3) * s, std::pow(e, -3 * phi) * s};
}

struct LoopBox {
  bool empty = false;
  std::int64_t norm_bound = 0;         // for a1..a5: |N(a_{k+1})| <= norm_bound
  std::vector<long double> place;      // per-place bounds on |a_{k+1}|_v
  bool zero_allowed = false;           // a8 may vanish
};

namespace detail {

inline constexpr long double kOut = 1.0L + 1e-12L;  // outward margin for float-derived bounds

inline long double absv(const FieldDescriptor& K, const AlgInt& a, int v) { return K.abs_v_ld(a, v); }

inline long double absv_prod(const FieldDescriptor& K, std::span<const AlgInt> pre, std::initializer_list<int> idx, int v) {
  long double r = 1;
  for (int i : idx) r *= absv(K, pre[i - 1], v);
  return r;
}

inline std::int64_t nrm(const FieldDescriptor& K, std::span<const AlgInt> pre, std::initializer_list<int> idx) {
  i128 r = 1;
  for (int i : idx) r *= K.abs_norm(pre[i - 1]);
  return narrow(r);
}

}  // namespace detail

// Bounds for a canonical element of norm <= n under the window.
inline std::vector<long double> canonical_place_bounds(const FieldDescriptor& K, std::int64_t n, AssociateWindow w) {
  long double nn = static_cast<long double>(n);
  if (!K.is_real_quadratic()) return {nn};
  long double e = std::exp(K.regulator), s = std::sqrt(nn);
  long double phi = w.shifted ? 0.5L : 0.0L;
  return {std::pow(e, phi + 1) * s * detail::kOut, std::pow(e, -phi) * s * detail::kOut};
}

// Superset box for a_{k+1} given a_1..a_k (k = prefix.size(), 0 <= k <= 7).
inline LoopBox derive_loop_bounds(const FieldDescriptor& K, std::span<const AlgInt> pre, const Bound& B,
                                  AssociateWindow w = {}) {
  LoopBox box;
  std::size_t k = pre.size();
  if (B.num < B.den) {  // B < 1: H >= 1 on content-free points
    box.empty = true;
    return box;
  }
  using detail::nrm;
  if (k <= 4) {
    std::int64_t nb = 0;
    switch (k) {
      case 0:
        nb = B.floor_sqrt_div(1);
        break;
      case 1: {
        i128 n1 = nrm(K, pre, {1});
        nb = std::min(B.floor_sqrt_div(n1 * n1), B.floor_div(n1));
        break;
      }
      case 2: {
        i128 n12 = nrm(K, pre, {1, 2});
        nb = std::min(B.floor_sqrt_div(n12 * n12), B.floor_sqrt_div(n12));
        break;
      }
      case 3: {
        i128 n123 = nrm(K, pre, {1, 2, 3});
        i128 n1233 = nrm(K, pre, {1, 2, 3, 3});
        nb = std::min(B.floor_div(n123 * n123), B.floor_sqrt_div(n1233));
        break;
      }
      case 4:
        nb = B.floor_sqrt_div(nrm(K, pre, {1, 2, 3, 3, 4, 4}));
        break;
    }
    box.norm_bound = nb;
    box.empty = nb < 1;
    box.place = canonical_place_bounds(K, std::max<std::int64_t>(nb, 0), w);
    return box;
  }
  auto caps = monomial_caps(K, B, w);
  box.place.resize(caps.size());
  for (std::size_t v = 0; v < caps.size(); ++v) {
    int iv = static_cast<int>(v);
    long double C = caps[v];
    long double bound = 0;
    switch (k) {
      case 5: {
        long double w2 = detail::absv_prod(K, pre, {1, 1, 2, 2, 3, 3, 4}, iv);
        bound = std::cbrt(C / w2);
        if (!K.is_real_quadratic())  // |a7|_v >= 1 here
          bound = std::min(bound, std::sqrt(C / detail::absv_prod(K, pre, {1, 2, 3, 3, 4, 4, 5, 5}, iv)));
        break;
      }
      case 6:
        bound = C / detail::absv_prod(K, pre, {1, 2, 3, 3, 4, 4, 5, 5, 6, 6}, iv);
        break;
      case 7:
        bound = C / detail::absv_prod(K, pre, {2, 3, 4, 5, 6, 7}, iv);
        box.zero_allowed = true;
        break;
      default:
        throw std::invalid_argument("derive_loop_bounds: prefix length must be <= 7");
    }
    box.place[v] = bound * detail::kOut;
  }
  // the norm of the next variable is bounded through the same monomials
  switch (k) {
    case 5:
      box.norm_bound = std::min(B.floor_cbrt_div(nrm(K, pre, {1, 1, 2, 2, 3, 3, 4})),
                                B.floor_sqrt_div(nrm(K, pre, {1, 2, 3, 3, 4, 4, 5, 5})));
      break;
    case 6:
      box.norm_bound = B.floor_div(nrm(K, pre, {1, 2, 3, 3, 4, 4, 5, 5, 6, 6}));
      break;
    case 7:
      box.norm_bound = B.floor_div(nrm(K, pre, {2, 3, 4, 5, 6, 7}));
      break;
  }
  box.empty = box.norm_bound < 1 && !box.zero_allowed;
  return box;
}

// ---- enumeration ----------------------------------------------------------------------

enum class LoopOrder { Forward, Reverse, Shuffled, Swapped };

inline const char* to_string(LoopOrder o) {
  switch (o) {
    case LoopOrder::Forward: return "forward";
    case LoopOrder::Reverse: return "reverse";
    case LoopOrder::Shuffled: return "shuffled";
    case LoopOrder::Swapped: return "swapped";
  }
  return "?";
}

struct EnumerateOptions {
  Bound B;
  int threads = 1;
  AssociateWindow window{};
  LoopOrder order = LoopOrder::Forward;
  std::uint64_t shuffle_seed = 1;
  bool collect_points = false;  // canonical points only
  bool force_general = false;   // use the generic engine over Q as well
  CertPolicy policy = CertPolicy::IntervalThenExact;
};

struct TorsorCount {
  std::int64_t M = 0;          // |M(B)|
  std::int64_t canonical = 0;  // full-orbit canonical count = N(B)
  std::int64_t candidates = 0; // completions reaching the exact filter
  std::vector<TorsorPoint> points;
  CertStats stats;
  double elapsed_s = 0;
};

namespace detail {

struct PrefixResult {
  std::int64_t M = 0, canonical = 0, candidates = 0;
  std::vector<TorsorPoint> points;
  CertStats stats;
};

// Canonical elements grouped by norm, up to a maximum norm.
struct CanonicalTable {
  std::vector<std::vector<AlgInt>> by_norm;
  CanonicalTable(const FieldDescriptor& K, std::int64_t max_norm, AssociateWindow w) : by_norm(max_norm + 1) {
    if (max_norm < 1) return;
    if (K.is_rational()) {
      for (std::int64_t n = 1; n <= max_norm; ++n) by_norm[n].push_back(AlgInt{w.shifted ? -n : n});
      return;
    }
    for_each_in_box(K, canonical_place_bounds(K, max_norm, w), [&](const AlgInt& a) {
      std::int64_t n = K.abs_norm(a);
      if (n <= max_norm && is_canonical_associate(K, a, w)) by_norm[n].push_back(a);
    });
  }
};

template <class T>
void order_inplace(std::vector<T>& v, LoopOrder o, std::uint64_t seed) {
  if (o == LoopOrder::Reverse) std::reverse(v.begin(), v.end());
  if (o == LoopOrder::Shuffled) {
    std::mt19937_64 g(seed);
    std::shuffle(v.begin(), v.end(), g);
  }
}

inline std::vector<std::array<AlgInt, 5>> build_prefixes(const FieldDescriptor& K, const Bound& B, AssociateWindow w) {
  std::vector<std::array<AlgInt, 5>> out;
  if (B.num < B.den) return out;
  std::int64_t maxn = std::max<std::int64_t>(1, B.floor());
  CanonicalTable tab(K, maxn, w);
  std::array<AlgInt, 5> a{};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == 5) {
      out.push_back(a);
      return;
    }
    LoopBox box = derive_loop_bounds(K, std::span<const AlgInt>(a.data(), k), B, w);
    if (box.empty) return;
    for (std::int64_t n = 1; n <= std::min(box.norm_bound, maxn); ++n)
      for (const AlgInt& c : tab.by_norm[n]) {
        a[k] = c;
        // coprimality among a1..a5: all pairs except {3,4} and {4,5}
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
          bool edge = (j == 2 && k == 3) || (j == 3 && k == 4);
          if (!edge) ok = coprime(K, a[j], c);
        }
        if (ok) self(self, k + 1);
      }
  };
  rec(rec, 0);
  return out;
}

inline bool coprime_all(const FieldDescriptor& K, const AlgInt& x, const TorsorPoint& T, std::initializer_list<int> idx) {
  for (int i : idx)
    if (!coprime(K, x, T[i - 1])) return false;
  return true;
}

// Generic engine: one prefix a1..a5.
inline void enumerate_prefix(const FieldDescriptor& K, const std::array<AlgInt, 5>& pre, const EnumerateOptions& opt,
                             PrefixResult& res) {
  const AssociateWindow w = opt.window;
  TorsorPoint T{};
  std::copy(pre.begin(), pre.end(), T.begin());
  auto collect_box = [&](const LoopBox& box) {
    std::vector<AlgInt> v;
    if (box.empty) return v;
    for_each_in_box(K, box.place, [&](const AlgInt& a) {
      if (K.abs_norm(a) <= box.norm_bound) v.push_back(a);
    });
    order_inplace(v, opt.order == LoopOrder::Shuffled ? LoopOrder::Reverse : opt.order, 0);
    return v;
  };

  auto do_a8 = [&]() {
    LoopBox b8 = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), 7), opt.B, w);
    AlgInt c = torsor_c(K, T);
    // a2 a8 = -c (mod a1)
    auto [g, s] = xgcd(K, T[1], T[0]);
    AlgInt inv = K.mul(s, K.unit_inverse(g));
    AlgInt r = K.mul(K.neg(c), inv);
    r = K.sub(r, K.mul(K.euclid_quotient(r, T[0]), T[0]));
    std::vector<long double> tb(b8.place.size());
    for (std::size_t v = 0; v < tb.size(); ++v) {
      int iv = static_cast<int>(v);
      bool cx = K.place_complex(iv);
      long double beta = cx ? std::sqrt(b8.place[v]) : b8.place[v];
      long double rr = cx ? std::sqrt(absv(K, r, iv)) : absv(K, r, iv);
      long double aa = cx ? std::sqrt(absv(K, T[0], iv)) : absv(K, T[0], iv);
      long double t = (beta + rr) / aa * kOut;
      tb[v] = cx ? t * t : t;
    }
    std::vector<AlgInt> ts{AlgInt{0}};
    for_each_in_box(K, tb, [&](const AlgInt& t) { ts.push_back(t); });
    order_inplace(ts, opt.order == LoopOrder::Shuffled ? LoopOrder::Reverse : opt.order, 0);
    for (const AlgInt& t : ts) {
      AlgInt a8 = K.add(r, K.mul(T[0], t));
      if (!a8.is_zero()) {
        bool inside = true;
        for (std::size_t v = 0; v < b8.place.size() && inside; ++v)
          inside = absv(K, a8, static_cast<int>(v)) <= b8.place[v] * kOut;
        if (!inside || K.abs_norm(a8) > b8.norm_bound) continue;
      }
      auto a9 = K.exact_divide(K.neg(K.add(K.mul(T[1], a8), c)), T[0]);
      if (!a9) throw std::logic_error("a8 coset does not solve the torsor equation");
      T[7] = a8;
      T[8] = *a9;
      ++res.candidates;
      if (!coprime_all(K, a8, T, {1, 3, 4, 5, 6})) continue;
      if (!coprime_all(K, *a9, T, {2, 3, 4, 5, 6})) continue;
      auto vals = psi_wide(K, T);
      if (!product_of_maxima_le(K, vals, opt.B, opt.policy, &res.stats)) continue;
      if (!in_F0(K, vals, w, opt.policy, &res.stats)) continue;
      ++res.M;
      if (in_mu_window(K, T[5], w)) {
        ++res.canonical;
        if (opt.collect_points) res.points.push_back(T);
      }
    }
  };

  auto a7_ok = [&](const AlgInt& a7) { return coprime_all(K, a7, T, {1, 2, 3, 4, 6}); };
  auto a6_ok = [&](const AlgInt& a6) { return coprime_all(K, a6, T, {4, 5}); };

  if (opt.order == LoopOrder::Swapped && !K.is_real_quadratic()) {
    // a7 outer: |a6|_v >= 1 gives an a6-free bound on a7
    std::vector<long double> b7;
    auto caps = monomial_caps(K, opt.B, w);
    for (std::size_t v = 0; v < caps.size(); ++v)
      b7.push_back(caps[v] / absv_prod(K, std::span<const AlgInt>(T.data(), 5), {1, 2, 3, 3, 4, 4, 5, 5}, static_cast<int>(v)) *
                   kOut);
    std::vector<AlgInt> a7s;
    for_each_in_box(K, b7, [&](const AlgInt& a) { a7s.push_back(a); });
    for (const AlgInt& a7 : a7s) {
      if (!coprime_all(K, a7, T, {1, 2, 3, 4})) continue;
      LoopBox b6 = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), 5), opt.B, w);
      for (const AlgInt& a6 : collect_box(b6)) {
        T[5] = a6;
        T[6] = a7;
        if (!a6_ok(a6) || !coprime(K, a7, a6)) continue;
        LoopBox b7x = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), 6), opt.B, w);
        bool inside = !b7x.empty && K.abs_norm(a7) <= b7x.norm_bound;
        for (std::size_t v = 0; v < b7x.place.size() && inside; ++v)
          inside = absv(K, a7, static_cast<int>(v)) <= b7x.place[v];
        if (inside) do_a8();
      }
    }
    return;
  }

  LoopBox b6 = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), 5), opt.B, w);
  for (const AlgInt& a6 : collect_box(b6)) {
    if (!a6_ok(a6)) continue;
    T[5] = a6;
    LoopBox b7 = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), 6), opt.B, w);
    for (const AlgInt& a7 : collect_box(b7)) {
      T[6] = a7;
      if (!a7_ok(a7)) continue;
      do_a8();
    }
  }
}

// Z^-valued fast path over Q (window: a1..a5 > 0, or < 0 when shifted).
inline void enumerate_prefix_Q(const std::array<AlgInt, 5>& pre, const EnumerateOptions& opt, PrefixResult& res) {
  const Bound& B = opt.B;
  const std::int64_t a1 = pre[0].x, a2 = pre[1].x, a3 = pre[2].x, a4 = pre[3].x, a5 = pre[4].x;
  const std::int64_t A1 = std::abs(a1), A2 = std::abs(a2), A3 = std::abs(a3), A4 = std::abs(a4), A5 = std::abs(a5);
  const i128 k2 = static_cast<i128>(A1) * A1 * A2 * A2 * A3 * A3 * A4;  // |a1^2 a2^2 a3^2 a4|
  const i128 k3 = static_cast<i128>(A1) * A2 * A3 * A3 * A4 * A4 * A5 * A5;  // |a1 a2 a3^2 a4^2 a5^2|
  const std::int64_t P45 = A4 * A5;
  const i128 c0 = static_cast<i128>(a3) * a4 * a4 * a5 * a5 * a5;  // c = c0 * a7
  const std::int64_t P8base = A1 * A3 * A4 * A5, P9base = A2 * A3 * A4 * A5, P7base = A1 * A2 * A3 * A4;
  // inverse of a2 modulo A1
  std::int64_t inv2 = 0;
  if (A1 > 1) {
    std::int64_t g0 = ((a2 % A1) + A1) % A1, g1 = A1, s0 = 1, s1 = 0;
    while (g1 != 0) {
      std::int64_t q = g0 / g1;
      std::int64_t t = g0 - q * g1;
      g0 = g1;
      g1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    inv2 = ((s0 % A1) + A1) % A1;
  }
  const bool sign6 = !opt.window.shifted;
  const bool rev = opt.order == LoopOrder::Reverse || opt.order == LoopOrder::Shuffled;

  auto inner = [&](std::int64_t a6, std::int64_t a7) {
    const std::int64_t A6 = std::abs(a6), A7 = std::abs(a7);
    const i128 c = c0 * a7;
    // |x0| = A2..A7 |a8| <= B ; |x3| = A1 A3 A4 A5 A6 A7 |a9| <= B with a1 a9 = -(a2 a8 + c)
    const i128 f0 = static_cast<i128>(A2) * A3 * A4 * A5 * A6 * A7;
    const i128 f3 = static_cast<i128>(A3) * A4 * A5 * A6 * A7;
    const i128 L8 = static_cast<i128>(B.num) / (f0 * B.den);
    const i128 L9 = static_cast<i128>(B.num) / (f3 * A1 * B.den);  // |a9| <= L9
    // a2 a8 in [-c - A1 L9, -c + A1 L9]
    i128 lo = -c - static_cast<i128>(A1) * L9, hi = -c + static_cast<i128>(A1) * L9;
    if (a2 < 0) {
      std::swap(lo, hi);
      lo = -lo;
      hi = -hi;
    }
    auto fdiv = [](i128 x, i128 y) { i128 q = x / y; if ((x % y != 0) && ((x < 0) != (y < 0))) --q; return q; };
    i128 lo8 = -fdiv(-lo, A2), hi8 = fdiv(hi, A2);  // ceil(lo/A2), floor(hi/A2)
    lo8 = std::max(lo8, -L8);
    hi8 = std::min(hi8, L8);
    if (lo8 > hi8) return;
    // residue: a8 = r (mod A1), r = -c inv2
    i128 r = 0;
    if (A1 > 1) {
      i128 cm = c % A1;
      r = ((-cm * inv2) % A1 + A1) % A1;
    }
    i128 first = lo8 + ((r - lo8) % A1 + A1) % A1;
    if (first > hi8) return;
    const std::int64_t P8 = P8base * A6, P9 = P9base * A6;
    auto body = [&](i128 a8) {
      i128 num = -(static_cast<i128>(a2) * a8 + c);
      i128 a9 = num / a1;
      ++res.candidates;
      // x4 = a7 a8 a9
      if (abs128(static_cast<i128>(a7) * a8 * a9) * B.den > B.num) return;
      if (abs128(a9) > L9 || abs128(a8) > L8) return;
      if (std::gcd(static_cast<std::int64_t>(abs128(a8)), P8) != 1) return;
      if (std::gcd(static_cast<std::int64_t>(abs128(a9)), P9) != 1) return;
      ++res.M;
      if ((a6 > 0) == sign6) {
        ++res.canonical;
        if (opt.collect_points)
          res.points.push_back(TorsorPoint{AlgInt{a1}, AlgInt{a2}, AlgInt{a3}, AlgInt{a4}, AlgInt{a5}, AlgInt{a6},
                                           AlgInt{a7}, AlgInt{static_cast<std::int64_t>(a8)},
                                           AlgInt{static_cast<std::int64_t>(a9)}});
      }
    };
    if (!rev) {
      for (i128 a8 = first; a8 <= hi8; a8 += A1) body(a8);
    } else {
      i128 last = first + ((hi8 - first) / A1) * A1;
      for (i128 a8 = last; a8 >= lo8; a8 -= A1) body(a8);
    }
  };

  if (opt.order == LoopOrder::Swapped) {
    const std::int64_t a7max = narrow(static_cast<i128>(B.num) / (k3 * B.den));
    for (std::int64_t A7 = 1; A7 <= a7max; ++A7) {
      if (std::gcd(A7, P7base) != 1) continue;
      std::int64_t a6max = std::min(B.floor_cbrt_div(k2), B.floor_sqrt_div(k3 * A7));
      for (std::int64_t A6 = 1; A6 <= a6max; ++A6) {
        if (std::gcd(A6, P45) != 1 || std::gcd(A7, A6) != 1) continue;
        for (std::int64_t s6 : {1, -1})
          for (std::int64_t s7 : {1, -1}) inner(s6 * A6, s7 * A7);
      }
    }
    return;
  }
  const std::int64_t a6max = std::min(B.floor_cbrt_div(k2), B.floor_sqrt_div(k3));
  for (std::int64_t i6 = 1; i6 <= a6max; ++i6) {
    std::int64_t A6 = rev ? a6max + 1 - i6 : i6;
    if (std::gcd(A6, P45) != 1) continue;
    const std::int64_t a7max = narrow(static_cast<i128>(B.num) / (k3 * A6 * A6 * B.den));
    const std::int64_t P7 = P7base * A6;
    for (std::int64_t s6 : {1, -1}) {
      for (std::int64_t i7 = -a7max; i7 <= a7max; ++i7) {
        std::int64_t a7 = rev ? -i7 : i7;
        if (a7 == 0 || std::gcd(std::abs(a7), P7) != 1) continue;
        inner(s6 * A6, a7);
      }
    }
  }
}

}  // namespace detail

inline TorsorCount enumerate_M(const FieldDescriptor& K, const EnumerateOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  TorsorCount out;
  if (opt.B.num < 0) throw std::invalid_argument("enumerate_M: B must be >= 0");
  auto prefixes = detail::build_prefixes(K, opt.B, opt.window);
  std::vector<std::size_t> order(prefixes.size());
  std::iota(order.begin(), order.end(), 0);
  detail::order_inplace(order, opt.order == LoopOrder::Swapped ? LoopOrder::Forward : opt.order, opt.shuffle_seed);
  std::vector<detail::PrefixResult> results(prefixes.size());
  bool fast = K.is_rational() && !opt.force_general;
  parallel_for_dynamic(order.size(), opt.threads, [&](std::size_t i) {
    std::size_t p = order[i];
    if (fast)
      detail::enumerate_prefix_Q(prefixes[p], opt, results[p]);
    else
      detail::enumerate_prefix(K, prefixes[p], opt, results[p]);
  });
  for (auto& r : results) {
    out.M += r.M;
    out.canonical += r.canonical;
    out.candidates += r.candidates;
    out.stats.merge(r.stats);
    if (opt.collect_points) out.points.insert(out.points.end(), r.points.begin(), r.points.end());
  }
  std::sort(out.points.begin(), out.points.end());
  out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace dp4
