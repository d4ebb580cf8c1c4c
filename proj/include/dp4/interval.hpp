#pragma once

// Closed real intervals [lo, hi] with outward-rounded MPFR endpoints.

#include <cstdint>
#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "bound.hpp"

namespace dp4 {

inline constexpr mpfr_prec_t kStartPrecision = 128;
inline constexpr mpfr_prec_t kMaxPrecision = 1024;

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kStartPrecision) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
      mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  Interval& operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval from_int(i128 v, mpfr_prec_t prec) {
    Interval r(prec);
    // Split into two 64-bit halves so arbitrary int128 values are exact or outward rounded.
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    auto high = static_cast<std::uint64_t>(u >> 64), low = static_cast<std::uint64_t>(u);
    mpfr_t t;
    mpfr_init2(t, prec);
    for (int side = 0; side < 2; ++side) {
      mpfr_ptr dst = side == 0 ? r.lo_ : r.hi_;
      mpfr_rnd_t rnd = (side == 0) != neg ? MPFR_RNDD : MPFR_RNDU;
      mpfr_set_ui(dst, 0, rnd);
      if (high != 0) {
        mpfr_set_uj(t, high, rnd);
        mpfr_mul_2ui(t, t, 64, rnd);
        mpfr_set(dst, t, rnd);
      }
      mpfr_add_uj_(dst, low, rnd);
      if (neg) mpfr_neg(dst, dst, MPFR_RNDN);
    }
    mpfr_clear(t);
    return r;
  }

  static Interval from_ratio(std::int64_t num, std::int64_t den, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, num, MPFR_RNDD);
    mpfr_div_si(r.lo_, r.lo_, den, MPFR_RNDD);
    mpfr_set_si(r.hi_, num, MPFR_RNDU);
    mpfr_div_si(r.hi_, r.hi_, den, MPFR_RNDU);
    return r;
  }
  static Interval from_double(double v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval sqrt_of(std::int64_t n, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, n, MPFR_RNDD);
    mpfr_sqrt(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_set_si(r.hi_, n, MPFR_RNDU);
    mpfr_sqrt(r.hi_, r.hi_, MPFR_RNDU);
    return r;
  }
  static Interval pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lo_d() + hi_d()); }
  double radius_d() const {
    mpfr_t t;
    mpfr_init2(t, precision());
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double r = 0.5 * mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_);
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
    return r;
  }
  // Division by an interval not containing zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw CertificationError("interval division by an interval containing zero");
    Interval inv(b.precision());
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  Interval abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Interval r(precision());
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_greater_p(hi_, r.hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  Interval sqr() const {
    Interval a = abs();
    return a * a;
  }
  Interval sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw CertificationError("sqrt of a negative interval");
    Interval r(precision());
    if (mpfr_sgn(lo_) <= 0)
      mpfr_set_zero(r.lo_, 1);
    else
      mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  Interval log() const {
    if (mpfr_sgn(lo_) <= 0) throw CertificationError("log of an interval reaching zero");
    Interval r(precision());
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  Interval exp() const {
    Interval r(precision());
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  friend Interval max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  // Three-valued comparisons: nullopt when the intervals overlap.
  friend std::optional<bool> certainly_le(const Interval& a, const Interval& b) {
    if (mpfr_lessequal_p(a.hi_, b.lo_)) return true;
    if (mpfr_greater_p(a.lo_, b.hi_)) return false;
    return std::nullopt;
  }
  friend std::optional<bool> certainly_lt(const Interval& a, const Interval& b) {
    if (mpfr_less_p(a.hi_, b.lo_)) return true;
    if (mpfr_greaterequal_p(a.lo_, b.hi_)) return false;
    return std::nullopt;
  }

  std::string str() const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "[%.17Rg, %.17Rg]", lo_, hi_);
    return buf;
  }

 private:
  static void mpfr_add_uj_(mpfr_ptr dst, std::uint64_t v, mpfr_rnd_t rnd) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_uj(t, v, MPFR_RNDN);  // exact at 64 bits
    mpfr_add(dst, dst, t, rnd);
    mpfr_clear(t);
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

// Precision ladder 128, 256, 512, 1024.
template <class Fn>
std::optional<bool> decide_with_escalation(Fn&& fn, int* escalations = nullptr) {
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    std::optional<bool> r = fn(p);
    if (r) return r;
    if (escalations) ++*escalations;
  }
  return std::nullopt;
}

}  // namespace dp4
