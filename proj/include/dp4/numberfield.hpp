#pragma once

// Rings of integers of the eight supported class-number-one fields, with ring basis (1, w),
// w = sqrt(m) or (1 + sqrt(m))/2.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bound.hpp"
#include "errors.hpp"
#include "interval.hpp"

namespace dp4 {

enum class FieldTag { Q, Qi, Qm2, Qm3, Qm7, Qm11, Qr2, Qr5 };

inline constexpr std::array<FieldTag, 8> kAllFields = {FieldTag::Q,   FieldTag::Qi,   FieldTag::Qm2,
                                                       FieldTag::Qm3, FieldTag::Qm7,  FieldTag::Qm11,
                                                       FieldTag::Qr2, FieldTag::Qr5};

struct AlgInt {
  std::int64_t x = 0;
  std::int64_t y = 0;

  constexpr AlgInt() = default;
  constexpr AlgInt(std::int64_t x_) : x(x_) {}
  constexpr AlgInt(std::int64_t x_, std::int64_t y_) : x(x_), y(y_) {}

  bool is_zero() const { return x == 0 && y == 0; }
  auto operator<=>(const AlgInt&) const = default;
};

// "3", "-2w", "1+2w": w is the second basis element.
inline std::string to_string(const AlgInt& a) {
  if (a.y == 0) return std::to_string(a.x);
  std::string ys = a.y == 1 ? "w" : a.y == -1 ? "-w" : std::to_string(a.y) + "w";
  if (a.x == 0) return ys;
  return std::to_string(a.x) + (a.y > 0 ? "+" : "") + ys;
}
inline std::ostream& operator<<(std::ostream& os, const AlgInt& a) { return os << to_string(a); }

// Which of the two windows is used for unit normalization. Both are valid fundamental
// domains; the shifted one exists to test window independence of counts.
struct AssociateWindow {
  bool shifted = false;
  friend bool operator==(const AssociateWindow&, const AssociateWindow&) = default;
};

// Coordinates wide enough for products of a few AlgInts.
struct Wide {
  i128 x = 0;
  i128 y = 0;
};

class FieldDescriptor {
 public:
  FieldTag tag = FieldTag::Q;
  std::string name = "Q";
  std::string short_tag = "q";
  int degree = 1;
  int r1 = 1;
  int r2 = 0;
  std::int64_t disc = 1;
  int mu_order = 2;
  std::int64_t m = 0;  // radicand; 0 for Q
  bool half = false;   // w = (1 + sqrt m)/2
  std::optional<AlgInt> eps;
  long double regulator = 1.0L;
  int class_number = 1;

  bool is_rational() const { return degree == 1; }
  bool is_real_quadratic() const { return degree == 2 && r1 == 2; }
  bool is_imaginary() const { return r2 == 1; }
  int places() const { return r1 + r2; }
  bool place_complex(int) const { return r2 == 1; }
  // d_v: local degree
  int local_degree(int v) const { return place_complex(v) ? 2 : 1; }

  // ---- ring arithmetic -------------------------------------------------
  AlgInt add(const AlgInt& a, const AlgInt& b) const { return {checked_add(a.x, b.x), checked_add(a.y, b.y)}; }
  AlgInt sub(const AlgInt& a, const AlgInt& b) const { return {checked_sub(a.x, b.x), checked_sub(a.y, b.y)}; }
  AlgInt neg(const AlgInt& a) const { return {checked_sub(0, a.x), checked_sub(0, a.y)}; }
  AlgInt mul(const AlgInt& a, const AlgInt& b) const {
    Wide r = mul(Wide{a.x, a.y}, Wide{b.x, b.y});
    return {narrow(r.x), narrow(r.y)};
  }
  Wide mul(const Wide& a, const Wide& b) const {
    i128 bd = a.y * b.y;
    if (!half) return {a.x * b.x + m * bd, a.x * b.y + a.y * b.x};
    i128 k = (m - 1) / 4;
    return {a.x * b.x + k * bd, a.x * b.y + a.y * b.x + bd};
  }
  AlgInt conj(const AlgInt& a) const {
    if (!half) return {a.x, checked_sub(0, a.y)};
    return {checked_add(a.x, a.y), checked_sub(0, a.y)};
  }
  Wide conj(const Wide& a) const { return half ? Wide{a.x + a.y, -a.y} : Wide{a.x, -a.y}; }
  i128 norm_wide(const Wide& a) const {
    if (degree == 1) return a.x;
    if (!half) return a.x * a.x - static_cast<i128>(m) * a.y * a.y;
    i128 k = (m - 1) / 4;
    return a.x * a.x + a.x * a.y - k * a.y * a.y;
  }
  std::int64_t norm(const AlgInt& a) const { return narrow(norm_wide(Wide{a.x, a.y})); }
  std::int64_t abs_norm(const AlgInt& a) const {
    auto n = norm(a);
    return n < 0 ? -n : n;
  }
  bool is_unit(const AlgInt& a) const { return abs_norm(a) == 1; }
  AlgInt pow(AlgInt a, unsigned e) const {
    AlgInt r{1};
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  AlgInt mul_int(const AlgInt& a, std::int64_t k) const { return {checked_mul(a.x, k), checked_mul(a.y, k)}; }

  // Inverse of a unit.
  AlgInt unit_inverse(const AlgInt& u) const {
    auto n = norm(u);
    if (n != 1 && n != -1) throw std::domain_error("unit_inverse of a non-unit");
    if (degree == 1) return u;
    return mul_int(conj(u), n);
  }
  // eps^k for k in Z (real quadratic only).
  AlgInt eps_pow(int k) const {
    if (!eps) throw std::domain_error("field has no fundamental unit");
    AlgInt base = k >= 0 ? *eps : unit_inverse(*eps);
    return pow(base, static_cast<unsigned>(k >= 0 ? k : -k));
  }
  // All roots of unity, starting with 1.
  std::vector<AlgInt> roots_of_unity() const {
    switch (tag) {
      case FieldTag::Qi:
        return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      case FieldTag::Qm3:  // w = (1+sqrt-3)/2 is a primitive 6th root
        return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
      default:
        return {{1, 0}, {-1, 0}};
    }
  }

  // ---- exact division and gcd -------------------------------------------
  std::optional<AlgInt> exact_divide(const AlgInt& a, const AlgInt& b) const {
    if (b.is_zero()) throw std::domain_error("exact_divide by zero");
    if (is_rational()) {
      if (a.x % b.x != 0) return std::nullopt;
      return AlgInt{a.x / b.x};
    }
    i128 n = norm_wide(Wide{b.x, b.y});
    Wide num = mul(Wide{a.x, a.y}, conj(Wide{b.x, b.y}));
    if (num.x % n != 0 || num.y % n != 0) return std::nullopt;
    return AlgInt{narrow(num.x / n), narrow(num.y / n)};
  }
  bool divides(const AlgInt& b, const AlgInt& a) const {
    if (b.is_zero()) return a.is_zero();
    return exact_divide(a, b).has_value();
  }

  // q with N(a - q b) < N(b): rounding in the basis, w-coordinate first for half bases.
  AlgInt euclid_quotient(const AlgInt& a, const AlgInt& b) const {
    if (is_rational()) return AlgInt{narrow(round_div(a.x, b.x))};
    i128 n = norm_wide(Wide{b.x, b.y});
    Wide num = mul(Wide{a.x, a.y}, conj(Wide{b.x, b.y}));
    if (n < 0) {
      n = -n;
      num.x = -num.x;
      num.y = -num.y;
    }
    if (!half) return {narrow(round_div(num.x, n)), narrow(round_div(num.y, n))};
    i128 v = round_div(num.y, n);
    // Remaining real part: num.x/n + (num.y/n - v)/2 = (2 num.x + num.y - v n) / (2n)
    i128 u = round_div(2 * num.x + num.y - v * n, 2 * n);
    return {narrow(u), narrow(v)};
  }

  // ---- embeddings ----------------------------------------------------------
  // Long double approximation of sigma_v at a real place (v = 0, 1).
  long double sigma_ld(const AlgInt& a, int v) const {
    if (is_rational()) return static_cast<long double>(a.x);
    long double s = std::sqrt(static_cast<long double>(m));
    if (v == 1) s = -s;
    if (!half) return a.x + a.y * s;
    return a.x + a.y * (1.0L + s) / 2.0L;
  }
  // |a|_v as long double: |sigma| at real places, squared modulus at a complex place.
  long double abs_v_ld(const AlgInt& a, int v) const {
    if (is_imaginary()) return static_cast<long double>(norm(a));
    if (is_rational()) return std::fabs(static_cast<long double>(a.x));
    // avoid cancellation: the embedding with matching signs is computed directly
    long double s1 = std::fabs(sigma_ld(a, 0)), s2 = std::fabs(sigma_ld(a, 1));
    long double n = std::fabs(static_cast<long double>(norm(a)));
    if (v == 0) return s1 >= s2 ? s1 : n / s2;
    return s2 >= s1 ? s2 : n / s1;
  }

  Interval sqrt_m(mpfr_prec_t prec) const { return Interval::sqrt_of(m < 0 ? -m : m, prec); }

  // sigma_v(a) at a real place as an interval.
  Interval sigma_interval(const Wide& a, int v, mpfr_prec_t prec) const {
    Interval x = Interval::from_int(a.x, prec);
    if (is_rational() || a.y == 0) return x;
    Interval s = sqrt_m(prec);
    if (v == 1) s = -s;
    Interval y = Interval::from_int(a.y, prec);
    if (!half) return x + y * s;
    Interval w = (Interval::from_int(1, prec) + s) * Interval::from_ratio(1, 2, prec);
    return x + y * w;
  }
  // |a|_v as an interval.
  Interval abs_v_interval(const Wide& a, int v, mpfr_prec_t prec) const {
    if (is_imaginary()) return Interval::from_int(norm_wide(a), prec);
    return sigma_interval(a, v, prec).abs();
  }

  // ---- exact signs at the first real place ---------------------------------
  // sign of sigma_1(a) for a real quadratic field, exactly.
  int sign_sigma(const Wide& a, int v = 0) const {
    if (is_rational()) return a.x > 0 ? 1 : a.x < 0 ? -1 : 0;
    i128 p = a.x, q = a.y;
    if (half) p = 2 * a.x + a.y;  // 2 sigma = p + q sqrt m
    if (v == 1) q = -q;
    return sign_p_plus_q_sqrt(p, q, m);
  }
  static int sign_p_plus_q_sqrt(i128 p, i128 q, std::int64_t mm) {
    if (p >= 0 && q >= 0) return (p == 0 && q == 0) ? 0 : 1;
    if (p <= 0 && q <= 0) return -1;
    // opposite signs: compare p^2 with m q^2
    using boost::multiprecision::cpp_int;
    cpp_int P = to_cpp(p), Q = to_cpp(q);
    cpp_int lhs = P * P, rhs = Q * Q * mm;
    int c = lhs > rhs ? 1 : lhs < rhs ? -1 : 0;
    return p > 0 ? c : -c;
  }

 private:
  static boost::multiprecision::cpp_int to_cpp(i128 v) {
    using boost::multiprecision::cpp_int;
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    cpp_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? cpp_int(-r) : r;
  }
  static i128 floor_div(i128 a, i128 b) {  // b > 0
    i128 q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
  }
  static i128 round_div(i128 a, i128 b) {  // nearest integer to a/b, b != 0
    if (b < 0) {
      a = -a;
      b = -b;
    }
    return floor_div(2 * a + b, 2 * b);
  }
};

inline FieldDescriptor make_field(FieldTag tag) {
  FieldDescriptor K;
  K.tag = tag;
  auto imag = [&](std::int64_t m, bool half, std::int64_t disc, int mu, const char* name, const char* st) {
    K.degree = 2;
    K.r1 = 0;
    K.r2 = 1;
    K.m = m;
    K.half = half;
    K.disc = disc;
    K.mu_order = mu;
    K.name = name;
    K.short_tag = st;
    K.regulator = 1.0L;
  };
  switch (tag) {
    case FieldTag::Q:
      break;
    case FieldTag::Qi:
      imag(-1, false, -4, 4, "Q(i)", "qi");
      break;
    case FieldTag::Qm2:
      imag(-2, false, -8, 2, "Q(sqrt-2)", "qm2");
      break;
    case FieldTag::Qm3:
      imag(-3, true, -3, 6, "Q(sqrt-3)", "qm3");
      break;
    case FieldTag::Qm7:
      imag(-7, true, -7, 2, "Q(sqrt-7)", "qm7");
      break;
    case FieldTag::Qm11:
      imag(-11, true, -11, 2, "Q(sqrt-11)", "qm11");
      break;
    case FieldTag::Qr2:
      K.degree = 2;
      K.r1 = 2;
      K.r2 = 0;
      K.m = 2;
      K.disc = 8;
      K.mu_order = 2;
      K.eps = AlgInt{1, 1};
      K.regulator = std::log(1.0L + std::sqrt(2.0L));
      K.name = "Q(sqrt2)";
      K.short_tag = "qr2";
      break;
    case FieldTag::Qr5:
      K.degree = 2;
      K.r1 = 2;
      K.r2 = 0;
      K.m = 5;
      K.half = true;
      K.disc = 5;
      K.mu_order = 2;
      K.eps = AlgInt{0, 1};
      K.regulator = std::log((1.0L + std::sqrt(5.0L)) / 2.0L);
      K.name = "Q(sqrt5)";
      K.short_tag = "qr5";
      break;
  }
  return K;
}

inline FieldTag parse_field_tag(std::string s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '(' && c != ')' && c != '_') t.push_back(static_cast<char>(std::tolower(c)));
  if (t == "q") return FieldTag::Q;
  if (t == "qi") return FieldTag::Qi;
  if (t == "qm2" || t == "qsqrt-2") return FieldTag::Qm2;
  if (t == "qm3" || t == "qsqrt-3") return FieldTag::Qm3;
  if (t == "qm7" || t == "qsqrt-7") return FieldTag::Qm7;
  if (t == "qm11" || t == "qsqrt-11") return FieldTag::Qm11;
  if (t == "qr2" || t == "qsqrt2") return FieldTag::Qr2;
  if (t == "qr5" || t == "qsqrt5") return FieldTag::Qr5;
  throw FieldNotSupported(s);
}
inline FieldDescriptor make_field(const std::string& tag) { return make_field(parse_field_tag(tag)); }

// ---- unit windows --------------------------------------------------------------

// Whether a (nonzero) lies in the argument/sign window fixing the root-of-unity part.
inline bool in_mu_window(const FieldDescriptor& K, const AlgInt& a, AssociateWindow w = {}) {
  if (K.is_real_quadratic() || K.is_rational()) {
    int s = K.sign_sigma(Wide{a.x, a.y});
    return w.shifted ? s < 0 : s > 0;
  }
  // sign of real part and imaginary part
  std::int64_t re = K.half ? 2 * a.x + a.y : a.x;
  std::int64_t im = a.y;
  switch (K.mu_order) {
    case 4:
      if (!w.shifted) return re > 0 && im >= 0;  // arg in [0, pi/2)
      return im >= re && im > -re;               // arg in [pi/4, 3pi/4)
    case 6:
      if (!w.shifted) return a.y >= 0 && a.x > 0;  // arg in [0, pi/3)
      return a.y >= a.x && 2 * a.x + a.y > 0;      // arg in [pi/6, pi/2)
    default:
      if (!w.shifted) return im > 0 || (im == 0 && re > 0);  // arg in [0, pi)
      return re < 0 || (re == 0 && im > 0);                  // arg in [pi/2, 3pi/2)
  }
}

// Real quadratic log window: eps^(2 phi) |N b| <= sigma_1(b)^2 < eps^(2 phi + 2) |N b|
// with phi = 0, or phi = 1/2 for the shifted window.
inline bool in_log_window(const FieldDescriptor& K, const AlgInt& b, AssociateWindow w = {}) {
  Wide bb{b.x, b.y};
  Wide b2 = K.mul(bb, bb);
  i128 n = abs128(K.norm_wide(bb));
  Wide e{K.eps->x, K.eps->y};
  Wide lowf = w.shifted ? e : Wide{1, 0};
  Wide highf = K.mul(K.mul(e, e), lowf);
  Wide lo{b2.x - lowf.x * n, b2.y - lowf.y * n};
  Wide hi{highf.x * n - b2.x, highf.y * n - b2.y};
  return K.sign_sigma(lo) >= 0 && K.sign_sigma(hi) > 0;
}

inline bool is_canonical_associate(const FieldDescriptor& K, const AlgInt& b, AssociateWindow w = {}) {
  if (b.is_zero()) return false;
  if (!in_mu_window(K, b, w)) return false;
  if (K.is_real_quadratic()) return in_log_window(K, b, w);
  return true;
}

// The representative u*a of the unit orbit of a lying in the window.
inline AlgInt canonical_associate(const FieldDescriptor& K, const AlgInt& a, AssociateWindow w = {}) {
  if (a.is_zero()) throw std::domain_error("canonical_associate of zero");
  if (!K.is_real_quadratic()) {
    for (const AlgInt& z : K.roots_of_unity()) {
      AlgInt c = K.mul(z, a);
      if (in_mu_window(K, c, w)) return c;
    }
    throw std::logic_error("no root of unity moves the element into the window");
  }
  long double R = K.regulator;
  long double n = std::fabs(static_cast<long double>(K.norm(a)));
  long double L = std::log(K.abs_v_ld(a, 0)) - 0.5L * std::log(n);
  long double phi = w.shifted ? 0.5L : 0.0L;
  int k = static_cast<int>(std::ceil(phi - L / R));
  for (int attempt = 0; attempt < 8; ++attempt) {
    AlgInt b = K.mul(K.eps_pow(k), a);
    if (!in_mu_window(K, b, w)) b = K.neg(b);
    Wide bb{b.x, b.y};
    Wide b2 = K.mul(bb, bb);
    i128 nn = abs128(K.norm_wide(bb));
    Wide e{K.eps->x, K.eps->y};
    Wide lowf = w.shifted ? e : Wide{1, 0};
    Wide highf = K.mul(K.mul(e, e), lowf);
    bool low_ok = K.sign_sigma(Wide{b2.x - lowf.x * nn, b2.y - lowf.y * nn}) >= 0;
    bool high_ok = K.sign_sigma(Wide{highf.x * nn - b2.x, highf.y * nn - b2.y}) > 0;
    if (low_ok && high_ok) return b;
    k += low_ok ? -1 : 1;
  }
  throw std::logic_error("canonical_associate failed to converge");
}

inline AlgInt gcd(const FieldDescriptor& K, AlgInt a, AlgInt b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0)");
  while (!b.is_zero()) {
    AlgInt q = K.euclid_quotient(a, b);
    AlgInt r = K.sub(a, K.mul(q, b));
    a = b;
    b = r;
  }
  return canonical_associate(K, a);
}

inline bool coprime(const FieldDescriptor& K, const AlgInt& a, const AlgInt& b) {
  if (K.is_rational()) {
    std::int64_t u = a.x < 0 ? -a.x : a.x, v = b.x < 0 ? -b.x : b.x;
    return std::gcd(u, v) == 1;
  }
  if (a.is_zero() && b.is_zero()) return false;
  AlgInt x = a, y = b;
  while (!y.is_zero()) {
    AlgInt q = K.euclid_quotient(x, y);
    AlgInt r = K.sub(x, K.mul(q, y));
    x = y;
    y = r;
  }
  return K.is_unit(x);
}

// (g, s) with g = gcd and s*a = g modulo b, i.e. s a + t b = g for some t.
inline std::pair<AlgInt, AlgInt> xgcd(const FieldDescriptor& K, AlgInt a, AlgInt b) {
  AlgInt s0{1}, s1{0};
  while (!b.is_zero()) {
    AlgInt q = K.euclid_quotient(a, b);
    AlgInt r = K.sub(a, K.mul(q, b));
    AlgInt s2 = K.sub(s0, K.mul(q, s1));
    a = b;
    b = r;
    s0 = s1;
    s1 = s2;
  }
  return {a, s0};
}

inline std::optional<AlgInt> exact_divide(const FieldDescriptor& K, const AlgInt& a, const AlgInt& b) {
  return K.exact_divide(a, b);
}

// ---- box enumeration ------------------------------------------------------------

// Certified |a|_v <= bound.
inline bool abs_v_le(const FieldDescriptor& K, const AlgInt& a, int v, long double bound) {
  if (K.is_imaginary()) return static_cast<long double>(K.norm(a)) <= bound;
  if (a.y == 0) return std::fabs(static_cast<long double>(a.x)) <= bound;
  long double approx = K.abs_v_ld(a, v);
  long double margin = 1e-12L * (approx + bound + 1.0L) + 1e-12L * (std::fabs(1.0L * a.x) + std::fabs(1.0L * a.y));
  if (approx + margin < bound) return true;
  if (approx - margin > bound) return false;
  auto r = decide_with_escalation([&](mpfr_prec_t p) {
    return certainly_le(K.abs_v_interval(Wide{a.x, a.y}, v, p), Interval::from_double(static_cast<double>(bound), p));
  });
  if (!r) throw CertificationError("abs_v_le undecided at maximum precision for " + to_string(a));
  return *r;
}

// Calls f(a) for every nonzero a with |a|_v <= bounds[v] at every place, in (y, x) order.
template <class F>
void for_each_in_box(const FieldDescriptor& K, const std::vector<long double>& bounds, F&& f) {
  for (auto b : bounds)
    if (!(b >= 0) || !std::isfinite(b)) throw std::invalid_argument("enumerate_box: bounds must be finite and >= 0");
  if (K.is_rational()) {
    auto n = static_cast<std::int64_t>(std::floor(bounds[0]));
    for (std::int64_t x = -n; x <= n; ++x)
      if (x != 0) f(AlgInt{x});
    return;
  }
  if (K.is_imaginary()) {
    auto Bi = static_cast<std::int64_t>(std::floor(bounds[0]));
    std::int64_t am = -K.m;
    if (!K.half) {
      std::int64_t ymax = isqrt(Bi / am);
      for (std::int64_t y = -ymax; y <= ymax; ++y) {
        std::int64_t xmax = isqrt(Bi - am * y * y);
        for (std::int64_t x = -xmax; x <= xmax; ++x)
          if (x != 0 || y != 0) f(AlgInt{x, y});
      }
    } else {
      std::int64_t ymax = isqrt(4 * Bi / am);
      for (std::int64_t y = -ymax; y <= ymax; ++y) {
        i128 rem = 4 * static_cast<i128>(Bi) - static_cast<i128>(am) * y * y;
        if (rem < 0) continue;
        std::int64_t r = isqrt(rem);
        // |2x + y| <= r
        auto fdiv2 = [](std::int64_t t) { return t >= 0 ? t / 2 : -((-t + 1) / 2); };
        std::int64_t xlo = fdiv2(-r - y), xhi = fdiv2(r - y);
        for (std::int64_t x = xlo; x <= xhi + 1; ++x) {
          if (x == 0 && y == 0) continue;
          if (K.norm(AlgInt{x, y}) <= Bi) f(AlgInt{x, y});
        }
      }
    }
    return;
  }
  // real quadratic
  long double b1 = bounds[0], b2 = bounds[1];
  long double s = std::sqrt(static_cast<long double>(K.m));
  long double w1 = K.half ? (1 + s) / 2 : s, w2 = K.half ? (1 - s) / 2 : -s;
  auto ymax = static_cast<std::int64_t>(std::floor((b1 + b2) / (w1 - w2))) + 1;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    long double lo = std::max(-b1 - y * w1, -b2 - y * w2);
    long double hi = std::min(b1 - y * w1, b2 - y * w2);
    if (lo > hi + 1) continue;
    auto xlo = static_cast<std::int64_t>(std::floor(lo)) - 1, xhi = static_cast<std::int64_t>(std::ceil(hi)) + 1;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      if (x == 0 && y == 0) continue;
      AlgInt a{x, y};
      if (abs_v_le(K, a, 0, b1) && abs_v_le(K, a, 1, b2)) f(a);
    }
  }
}

inline std::vector<AlgInt> enumerate_box(const FieldDescriptor& K, const std::vector<long double>& bounds) {
  std::vector<AlgInt> out;
  for_each_in_box(K, bounds, [&](const AlgInt& a) { out.push_back(a); });
  return out;
}

// ---- embedding vectors -------------------------------------------------------------

struct PlaceValue {
  Interval re;
  Interval im;
  bool complex = false;
};

struct EmbeddingVector {
  std::vector<PlaceValue> places;
  mpfr_prec_t precision = kStartPrecision;
};

inline EmbeddingVector embed(const FieldDescriptor& K, const AlgInt& a, mpfr_prec_t prec = kStartPrecision) {
  EmbeddingVector e;
  e.precision = prec;
  if (K.is_imaginary()) {
    Interval x = Interval::from_int(a.x, prec), y = Interval::from_int(a.y, prec);
    Interval s = K.sqrt_m(prec);
    PlaceValue pv{x, y * s, true};
    if (K.half) {
      Interval h = Interval::from_ratio(1, 2, prec);
      pv.re = x + y * h;
      pv.im = y * s * h;
    }
    e.places.push_back(std::move(pv));
    return e;
  }
  for (int v = 0; v < K.places(); ++v)
    e.places.push_back(PlaceValue{K.sigma_interval(Wide{a.x, a.y}, v, prec), Interval(prec), false});
  return e;
}

// |.|_v from an embedding: absolute value at a real place, squared modulus at a complex place.
inline Interval abs_v(const PlaceValue& p) {
  if (!p.complex) return p.re.abs();
  return p.re.sqr() + p.im.sqr();
}

}  // namespace dp4
