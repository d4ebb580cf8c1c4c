#pragma once

// Certified comparisons of place-wise maxima. Over Q and imaginary fields every |.|_v is an
// exact integer; over real quadratic fields the interval path runs first and ties fall back
// to exact sign tests in Z[w].

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "numberfield.hpp"

namespace dp4 {

enum class CertPolicy { IntervalThenExact, IntervalOnly, ExactOnly };

struct CertStats {
  std::uint64_t interval_decided = 0;  // settled at the starting precision
  std::uint64_t escalations = 0;       // precision doublings
  std::uint64_t exact_fallbacks = 0;   // settled by exact algebra after 1024 bits
  void merge(const CertStats& o) {
    interval_decided += o.interval_decided;
    escalations += o.escalations;
    exact_fallbacks += o.exact_fallbacks;
  }
};

// max_i |v_i|_v as an exact integer (Q, imaginary fields).
inline i128 place_max_exact(const FieldDescriptor& K, std::span<const Wide> vals) {
  i128 best = 0;
  for (const Wide& w : vals) {
    i128 a = K.is_rational() ? abs128(w.x) : K.norm_wide(w);
    if (a > best) best = a;
  }
  return best;
}

inline Interval place_max_interval(const FieldDescriptor& K, std::span<const Wide> vals, int v, mpfr_prec_t prec) {
  Interval best = Interval::from_int(0, prec);
  for (const Wide& w : vals) best = max(best, K.abs_v_interval(w, v, prec));
  return best;
}

namespace detail {

template <class IntervalFn, class ExactFn>
bool certified(CertPolicy policy, CertStats* stats, IntervalFn&& fi, ExactFn&& fe, const char* what) {
  if (policy != CertPolicy::ExactOnly) {
    int esc = 0;
    auto r = decide_with_escalation(fi, &esc);
    if (stats) {
      if (esc == 0 && r) ++stats->interval_decided;
      stats->escalations += static_cast<std::uint64_t>(esc);
    }
    if (r) return *r;
    if (policy == CertPolicy::IntervalOnly) throw CertificationError(std::string(what) + ": undecided at 1024 bits");
    if (stats) ++stats->exact_fallbacks;
  }
  return fe();
}

inline Wide wide_sub(Wide a, Wide b) { return {a.x - b.x, a.y - b.y}; }
inline Wide wide_scale(Wide a, i128 k) { return {a.x * k, a.y * k}; }

// |sigma_1(a)| >= |sigma_1(b)|
inline bool abs_sigma1_ge(const FieldDescriptor& K, const Wide& a, const Wide& b) {
  return K.sign_sigma(wide_sub(K.mul(a, a), K.mul(b, b))) >= 0;
}

}  // namespace detail

// prod_v max_i |vals_i|_v <= B
inline bool product_of_maxima_le(const FieldDescriptor& K, std::span<const Wide> vals, const Bound& B,
                                 CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  if (!K.is_real_quadratic()) return B.ge_int(place_max_exact(K, vals));
  if (B.num < 0) return false;
  auto fi = [&](mpfr_prec_t p) -> std::optional<bool> {
    Interval h = place_max_interval(K, vals, 0, p) * place_max_interval(K, vals, 1, p);
    return certainly_le(h, Interval::from_ratio(B.num, B.den, p));
  };
  auto fe = [&]() {
    // max_i |s1(v_i)| * max_j |s2(v_j)| <= B  iff  |s1(v_i conj v_j)| <= B for all i, j
    for (const Wide& a : vals)
      for (const Wide& b : vals) {
        Wide g = detail::wide_scale(K.mul(a, K.conj(b)), B.den);
        Wide up{static_cast<i128>(B.num) - g.x, -g.y}, dn{static_cast<i128>(B.num) + g.x, g.y};
        if (K.sign_sigma(up) < 0 || K.sign_sigma(dn) < 0) return false;
      }
    return true;
  };
  return detail::certified(policy, stats, fi, fe, "product_of_maxima_le");
}

// Real quadratic: max_i |s1(v_i)| >= eps^k max_j |s2(v_j)|, k >= 0.
inline bool maxima_ratio_ge(const FieldDescriptor& K, std::span<const Wide> vals, int k,
                            CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  AlgInt ek = K.eps_pow(k);
  auto fi = [&](mpfr_prec_t p) -> std::optional<bool> {
    Interval lhs = place_max_interval(K, vals, 0, p);
    Interval rhs = K.sigma_interval(Wide{ek.x, ek.y}, 0, p) * place_max_interval(K, vals, 1, p);
    return certainly_le(rhs, lhs);
  };
  auto fe = [&]() {
    Wide e{ek.x, ek.y};
    for (const Wide& a : vals) {
      bool dominates = true;
      for (const Wide& b : vals)
        if (!detail::abs_sigma1_ge(K, a, K.mul(e, K.conj(b)))) {
          dominates = false;
          break;
        }
      if (dominates) return true;
    }
    return false;
  };
  return detail::certified(policy, stats, fi, fe, "maxima_ratio_ge");
}

}  // namespace dp4
