#pragma once

// Archimedean densities of the resolved surface, two ways:
//  region3d-mc   factor * vol{x in K_v^3 : N_v(x) <= 1} by importance sampling
//                (factor 3/2 at a real place, 12/pi at a complex one)
//  adelic2d-quad integral of 1/max{1,|u|,|z0 u|,|z3 u|,|z0 z3 u|}, u = z0 + z3, over K_v^2,
//                with the inner variable done in closed form
// plus the Monte Carlo volume check of S_F(a'; B).

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numberfield.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace dp4 {

enum class DensityMethod { Region3dMC, Adelic2dQuad };

inline const char* to_string(DensityMethod m) { return m == DensityMethod::Region3dMC ? "region3d-mc" : "adelic2d-quad"; }

struct Density {
  double value = 0;
  double err = 0;  // one standard error (MC) or quadrature error plus tail bounds
  DensityMethod method = DensityMethod::Adelic2dQuad;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
};

struct MCBudget {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 42;
  int threads = 1;
  double max_rel_err = 1.0;  // BudgetExceeded above this
};

// ---- the region N_v <= 1 ------------------------------------------------------------

inline double N_real(double x0, double x1, double x2) {
  double s = x0 + x2;
  return std::max({std::fabs(x0 * x1 * x2), std::fabs(x1 * x1 * x1), std::fabs(x1 * x1 * x2), std::fabs(x1 * x2 * s),
                   std::fabs(x0 * x2 * s)});
}

inline double N_complex(std::complex<double> x0, std::complex<double> x1, std::complex<double> x2) {
  auto n = [](std::complex<double> z) { return std::norm(z); };
  std::complex<double> s = x0 + x2;
  return std::max({n(x0 * x1 * x2), n(x1 * x1 * x1), n(x1 * x1 * x2), n(x1 * x2 * s), n(x0 * x2 * s)});
}

inline double adelic_integrand_real(double z0, double z3) {
  double u = z0 + z3;
  return 1.0 / std::max({1.0, std::fabs(u), std::fabs(z0 * u), std::fabs(z3 * u), std::fabs(z0 * z3 * u)});
}

inline double adelic_integrand_complex(std::complex<double> z0, std::complex<double> z3) {
  std::complex<double> u = z0 + z3;
  return 1.0 / std::max({1.0, std::norm(u), std::norm(z0 * u), std::norm(z3 * u), std::norm(z0 * z3 * u)});
}

namespace detail {

// Proposal for (x0, x1, x2): |x1| <= 1, |x2| from a density ~ min(|x2|^-1/2, |x2|^-2)
// (real) or ~ min(1, |x2|^-3) in the radius (complex), x0 uniform on the union of the two
// balls of radius r* = min(sqrt C, 2C/|x2|, A) about 0 and -x2, C = 1/|x2|, A = 1/(|x1||x2|).
// The slice {x0 : N <= 1} lies in that union because min(|x0|, |x0 + x2|)^2 <= |x0||x0 + x2|.
struct RealDraw {
  double x0, x1, x2, weight;  // weight = 1 / proposal density (0 off the support)
};

inline RealDraw draw_real(const CounterRng& rng, std::uint64_t c) {
  double u0 = rng.uniform(c), u1 = rng.uniform(c + 1), u2 = rng.uniform(c + 2), u3 = rng.uniform(c + 3),
         u4 = rng.uniform(c + 4), u5 = rng.uniform(c + 5);
  double x1 = u1;
  double x2, g;
  if (u0 < 2.0 / 3.0) {
    x2 = u2 * u2;
    g = 1.0 / (3.0 * std::sqrt(x2));
  } else {
    x2 = 1.0 / u2;
    g = 1.0 / (3.0 * x2 * x2);
  }
  double A = 1.0 / (x1 * x2), C = 1.0 / x2;
  double r = std::min({std::sqrt(C), 2.0 * C / x2, A});
  double centre = u3 < 0.5 ? 0.0 : -x2;
  double x0 = centre + (2.0 * u4 - 1.0) * r;
  int n = (std::fabs(x0) <= r) + (std::fabs(x0 + x2) <= r);
  double w = 4.0 * r / std::max(n, 1) / g;
  // the symmetries x1 -> -x1 and x -> -x
  unsigned bits = static_cast<unsigned>(u5 * 4.0);
  if (bits & 1) x1 = -x1;
  if (bits & 2) x0 = -x0, x1 = -x1, x2 = -x2;
  return {x0, x1, x2, 4.0 * w};
}

struct ComplexDraw {
  std::complex<double> x0, x1, x2;
  double weight;
};

inline ComplexDraw draw_complex(const CounterRng& rng, std::uint64_t c) {
  constexpr double pi = std::numbers::pi;
  double u0 = rng.uniform(c), u1 = rng.uniform(c + 1), u2 = rng.uniform(c + 2), u3 = rng.uniform(c + 3),
         u4 = rng.uniform(c + 4), u5 = rng.uniform(c + 5), u6 = rng.uniform(c + 6), u7 = rng.uniform(c + 7);
  double rho, p;
  if (u0 < 2.0 / 3.0) {
    rho = u2;
    p = 2.0 / 3.0;
  } else {
    rho = 1.0 / std::sqrt(u2);
    p = (2.0 / 3.0) / (rho * rho * rho);
  }
  double r1 = std::sqrt(u1);
  auto x2 = std::polar(rho, 2 * pi * u5);
  auto x1 = std::polar(r1, 2 * pi * u6);
  double A = 1.0 / (r1 * rho), C = 1.0 / rho;
  double r = std::min({std::sqrt(C), 2.0 * C / rho, A});
  std::complex<double> centre = u3 < 0.5 ? std::complex<double>(0) : -x2;
  auto x0 = centre + std::polar(r * std::sqrt(u4), 2 * pi * u7);
  int n = (std::abs(x0) <= r) + (std::abs(x0 + x2) <= r);
  // densities: x2 -> p / (2 pi rho), x1 -> 1 / pi, x0 -> n / (2 pi r^2)
  double w = (2 * pi * rho / p) * pi * (2 * pi * r * r / std::max(n, 1));
  return {x0, x1, x2, w};
}

struct MCResult {
  double mean = 0, se = 0;
};

// Deterministic Monte Carlo driver: fixed blocks, one RNG stream per block, block sums
// reduced in block order.
template <class Fn>
MCResult mc_mean(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream, int threads, Fn&& fn) {
  constexpr std::uint64_t kBlock = 1 << 16;
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> s1(blocks), s2(blocks);
  parallel_for_dynamic(blocks, threads, [&](std::size_t b) {
    CounterRng rng(seed, (stream << 40) + b);
    std::uint64_t n = std::min<std::uint64_t>(kBlock, samples - b * kBlock);
    NeumaierSum a, q;
    for (std::uint64_t i = 0; i < n; ++i) {
      double w = fn(rng, 16 * i);
      a.add(w);
      q.add(w * w);
    }
    s1[b] = a.value();
    s2[b] = q.value();
  });
  NeumaierSum a, q;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    a.add(s1[b]);
    q.add(s2[b]);
  }
  double n = static_cast<double>(samples);
  double mean = a.value() / n;
  double var = std::max(0.0, q.value() / n - mean * mean) * n / (n - 1);
  return {mean, std::sqrt(var / n)};
}

}  // namespace detail

// vol{N_v <= 1} at a real or complex place.
inline detail::MCResult region3d_volume(bool complex_place, const MCBudget& bud) {
  if (!complex_place)
    return detail::mc_mean(bud.samples, bud.seed, 1, bud.threads, [](const CounterRng& r, std::uint64_t c) {
      auto d = detail::draw_real(r, c);
      return N_real(d.x0, d.x1, d.x2) <= 1.0 ? d.weight : 0.0;
    });
  return detail::mc_mean(bud.samples, bud.seed, 2, bud.threads, [](const CounterRng& r, std::uint64_t c) {
    auto d = detail::draw_complex(r, c);
    return N_complex(d.x0, d.x1, d.x2) <= 1.0 ? d.weight : 0.0;
  });
}

// ---- adelic2d ------------------------------------------------------------------------

namespace detail {

struct Quad {
  double value = 0, err = 0;
};

// 61-point Kronrod rule with |K - G30| as the error. Bisection runs against an absolute
// target; Boost's own recursion compares each piece against a relative one, which stalls on
// pieces of tiny mass.
template <class F>
Quad gk61(const F& f, double a, double b) {
  using K = boost::math::quadrature::gauss_kronrod<double, 61>;
  using G = boost::math::quadrature::gauss<double, 30>;
  const auto& xk = K::abscissa();
  const auto& wk = K::weights();
  const auto& wg = G::weights();
  double h = (b - a) / 2, m = (a + b) / 2;
  double fc = f(m);
  double k = wk[0] * fc, g = 0;  // the 30-point Gauss rule has no centre node
  for (std::size_t i = 1; i < xk.size(); ++i) {
    double v = f(m - h * xk[i]) + f(m + h * xk[i]);
    k += wk[i] * v;
    if (i % 2 == 1) g += wg[i / 2] * v;
  }
  return {k * h, std::fabs((k - g) * h)};
}

template <class F>
Quad gk_abs(const F& f, double a, double b, double abs_tol, int depth = 30) {
  Quad q = gk61(f, a, b);
  double m = (a + b) / 2;
  if (q.err <= abs_tol || depth == 0 || !(a < m && m < b)) return q;
  Quad l = gk_abs(f, a, m, abs_tol / 2, depth - 1), r = gk_abs(f, m, b, abs_tol / 2, depth - 1);
  return {l.value + r.value, l.err + r.err};
}

// Sum over consecutive pieces with a common absolute target tol * |rough total|.
template <class F>
Quad gk_pieces(const F& f, const std::vector<std::pair<double, double>>& pieces, double tol) {
  double rough = 0;
  for (auto [a, b] : pieces) rough += std::fabs(gk61(f, a, b).value);
  Quad q;
  for (auto [a, b] : pieces) {
    Quad p = gk_abs(f, a, b, tol * rough / static_cast<double>(pieces.size()));
    q.value += p.value;
    q.err += p.err;
  }
  return q;
}

// Real place, u = a > 0 fixed, z0 = a/2 + s:  int_R ds / max{m0, a(c + |s|), a|c^2 - s^2|}.
inline long double adelic_real_slice(long double a) {
  const long double c = a / 2, m0 = std::max<long double>(1, a);
  std::vector<long double> bp{0, c};
  auto add = [&](long double s) {
    if (s > 0 && std::isfinite(s)) bp.push_back(s);
  };
  add(m0 / a - c);
  for (int sg : {1, -1}) {
    long double v = c * c + sg * m0 / a;
    if (v > 0) add(std::sqrt(v));
  }
  // a(c + s) = a|c^2 - s^2|
  for (auto [b, cc] : {std::pair<long double, long double>{-1, -c - c * c}, {1, c - c * c}}) {
    long double d = b * b - 4 * cc;
    if (d >= 0) {
      add((-b + std::sqrt(d)) / 2);
      add((-b - std::sqrt(d)) / 2);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  auto g = [&](int k, long double s) {
    if (k == 0) return m0;
    if (k == 1) return a * (c + s);
    return a * std::fabs(c * c - s * s);
  };
  // log1p forms: c is tiny for small a
  auto quad_log = [&](long double s) {
    return s > c ? std::log1p(-2 * c / (s + c)) : std::log1p(2 * s / (c - s));
  };
  auto piece = [&](int k, long double lo, long double hi) -> long double {
    if (k == 0) return (hi - lo) / m0;
    if (k == 1) return std::log1p((hi - lo) / (c + lo)) / a;
    return (quad_log(hi) - quad_log(lo)) / (2 * a * c);
  };
  auto dominant = [&](long double s) {
    int k = 0;
    for (int j = 1; j < 3; ++j)
      if (g(j, s) > g(k, s)) k = j;
    return k;
  };
  long double tot = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    int k = dominant((bp[i] + bp[i + 1]) / 2);
    tot += piece(k, bp[i], bp[i + 1]);
  }
  long double S = bp.back();
  if (dominant(2 * S + 1) != 2) throw std::logic_error("adelic_real_slice: unexpected tail branch");
  tot += -quad_log(S) / (2 * a * c);
  return 2 * tot;
}

// Complex place, u = a > 0, s = x + iy, x >= 0 fixed: int_R dy / max{m0, a^2(P + y^2),
// a^2 (P + y^2)(Q + y^2)} with P = (c + x)^2, Q = (c - x)^2, m0 = max(1, a^2).
inline long double adelic_complex_line(long double a, long double x) {
  const long double c = a / 2, a2 = a * a, m0 = std::max<long double>(1, a2);
  const long double P = (c + x) * (c + x), Q = (c - x) * (c - x);
  std::vector<long double> bt{0};
  auto add = [&](long double t) {
    if (t > 0 && std::isfinite(t)) bt.push_back(t);
  };
  add(m0 / a2 - P);
  add(1 - Q);
  add((-(P + Q) + std::sqrt((P - Q) * (P - Q) + 4 * m0 / a2)) / 2);
  std::sort(bt.begin(), bt.end());
  bt.erase(std::unique(bt.begin(), bt.end()), bt.end());
  std::vector<long double> by;
  for (long double t : bt) by.push_back(std::sqrt(t));
  constexpr long double inf = std::numeric_limits<long double>::infinity();
  // segment integrals; the atan subtraction formula avoids the pi/2 constants cancelling
  auto seg = [&](long double K, long double lo, long double hi) -> long double {  // dy / (K + y^2)
    if (K == 0) return 1 / lo - (hi == inf ? 0.0L : 1 / hi);
    long double r = std::sqrt(K);
    if (hi == inf) return (lo == 0 ? std::numbers::pi_v<long double> / 2 : std::atan(r / lo)) / r;
    return std::atan((hi - lo) * r / (K + hi * lo)) / r;
  };
  // int_lo^hi dy / (M + y^2)^n: a series in M / y^2 away from the origin, the reduction
  // formula near it
  auto ipow = [&](int n, long double M, long double lo, long double hi) -> long double {
    if (M < 0.25L * lo * lo) {
      long double sum = 0, coef = 1, Mk = 1;
      for (int k = 0; k < 200; ++k) {
        int e = 2 * n + 2 * k - 1;
        long double t = coef * Mk * (std::pow(lo, -e) - (hi == inf ? 0.0L : std::pow(hi, -e))) / e;
        sum += (k % 2 ? -t : t);
        if (std::fabs(t) < 1e-21L * std::fabs(sum)) break;
        coef = coef * (n + k) / (k + 1);
        Mk *= M;
      }
      return sum;
    }
    auto rat = [&](long double y, int j) { return y == inf ? 0.0L : y / std::pow(M + y * y, j); };
    long double I = seg(M, lo, hi);
    for (int j = 1; j < n; ++j) I = (rat(hi, j) - rat(lo, j)) / (2 * j * M) + (2 * j - 1) * I / (2 * j * M);
    return I;
  };
  auto piece = [&](int k, long double lo, long double hi) -> long double {
    if (k == 0) return (hi - lo) / m0;
    if (k == 1) return seg(P, lo, hi) / a2;
    long double d = P - Q, M = (P + Q) / 2, D = d / 2;
    if (D > 1e-4L * (M + lo * lo)) return (seg(Q, lo, hi) - seg(P, lo, hi)) / (a2 * d);
    // 1/((M + y^2)^2 - D^2) = (M + y^2)^-2 + D^2 (M + y^2)^-4 + O(D^4), relative error below 1e-16
    return (ipow(2, M, lo, hi) + D * D * ipow(4, M, lo, hi)) / a2;
  };
  auto g = [&](int k, long double y) {
    long double t = y * y;
    if (k == 0) return m0;
    if (k == 1) return a2 * (P + t);
    return a2 * (P + t) * (Q + t);
  };
  auto dominant = [&](long double y) {
    int k = 0;
    for (int j = 1; j < 3; ++j)
      if (g(j, y) > g(k, y)) k = j;
    return k;
  };
  long double tot = 0;
  for (std::size_t i = 0; i + 1 < by.size(); ++i) {
    int k = dominant((by[i] + by[i + 1]) / 2);
    tot += piece(k, by[i], by[i + 1]);
  }
  long double S = by.back();
  if (dominant(2 * S + 1) != 2) throw std::logic_error("adelic_complex_line: unexpected tail branch");
  tot += piece(2, S, inf);
  return 2 * tot;
}

inline long double adelic_complex_slice(long double a, double tol, double* err) {
  double c = static_cast<double>(a / 2);
  auto f = [&](double x) { return static_cast<double>(adelic_complex_line(a, x)); };
  // where the branch structure in y changes: Q = 0, Q = 1, P = m0 / a^2, PQ = m0 / a^2, and
  // the triple point P - Q = m0 / a^2 - 1
  const double r = static_cast<double>(std::sqrt(std::max<long double>(1, a * a)) / a);
  std::vector<double> xs{0.0, c, std::fabs(c - 1), c + 1, r - c, std::sqrt(c * c + r), std::sqrt(c * c - r),
                         (r * r - 1) / (2 * static_cast<double>(a))};
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](double v) { return !(v >= 0); }), xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // x = X e^u on long pieces; the line decays like x^-3, so u <= 200 loses nothing
  xs.push_back(std::numeric_limits<double>::infinity());
  std::vector<std::pair<double, double>> lin, logp;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double lo = xs[i], hi = xs[i + 1];
    if (lo > 0 && hi > 4 * lo)
      logp.emplace_back(std::log(lo), std::isinf(hi) ? std::log(lo) + 200 : std::log(hi));
    else
      lin.emplace_back(lo, hi);
  }
  auto g = [&](double u) {
    double x = std::exp(u);
    return x * f(x);
  };
  Quad q1 = gk_pieces(f, lin, tol), q2 = gk_pieces(g, logp, tol);
  double sum = q1.value + q2.value, e = q1.err + q2.err;
  if (err) *err = 2 * e;
  return 2 * sum;  // x -> -x
}

}  // namespace detail

// Outer integrals in log a, tails outside [e^lo, e^hi] bounded in closed form.
inline Density adelic2d_real_uncached() {
  using detail::Quad;
  constexpr double lo = -40, hi = 25;
  auto f = [](double t) {
    double a = std::exp(t);
    return a * static_cast<double>(detail::adelic_real_slice(a));
  };
  Quad q = detail::gk_pieces(f, {{lo, 0.0}, {0.0, hi}}, 1e-12);
  double w = q.value;
  // slice <= 2 (1/2 + 3/sqrt a) for a <= 1 and <= 4 (log(a + 1) + 2) / a^2 for a >= 2
  double a0 = std::exp(lo), A = std::exp(hi);
  double tail = (a0 + 12 * std::sqrt(a0)) + 4 * (std::log(A + 1) + 4) / A;
  Density d;
  d.method = DensityMethod::Adelic2dQuad;
  d.value = 2 * w;  // u -> -u
  d.err = 2 * (q.err + tail);
  return d;
}

inline Density adelic2d_complex_uncached() {
  using detail::Quad;
  constexpr double pi = std::numbers::pi;
  constexpr double lo = -30, hi = 14, inner_tol = 1e-9;
  auto f = [](double t) {
    double a = std::exp(t);
    return 2 * pi * a * a * static_cast<double>(detail::adelic_complex_slice(a, inner_tol, nullptr));
  };
  Quad q = detail::gk_pieces(f, {{lo, 0.0}, {0.0, hi}}, 1e-9);
  double w = q.value;
  // 2 pi a * slice <= 2 pi^2 (a/4 + 2) for a <= 1 and <= 32 pi^2 (2.5 + log a) / a^3 for a >= 2
  double a0 = std::exp(lo), A = std::exp(hi);
  double tail = 2 * pi * pi * (a0 * a0 / 8 + 2 * a0) + 8 * pi * pi * (5.5 + 2 * std::log(A)) / (A * A);
  Density d;
  d.method = DensityMethod::Adelic2dQuad;
  d.value = 4 * w;  // Haar measure at a complex place is twice Lebesgue in each variable
  d.err = 4 * (q.err + tail + inner_tol * std::fabs(w));
  return d;
}

// Deterministic, so computed once per process.
inline Density adelic2d_real() {
  static const Density d = adelic2d_real_uncached();
  return d;
}

inline Density adelic2d_complex() {
  static const Density d = adelic2d_complex_uncached();
  return d;
}

inline Density omega_arch(bool complex_place, DensityMethod method, const MCBudget& bud = {}) {
  Density d;
  if (method == DensityMethod::Adelic2dQuad) {
    d = complex_place ? adelic2d_complex() : adelic2d_real();
  } else {
    constexpr double pi = std::numbers::pi;
    double factor = complex_place ? 12.0 / pi : 1.5;
    auto r = region3d_volume(complex_place, bud);
    d.method = method;
    d.value = factor * r.mean;
    d.err = factor * r.se;
    d.seed = bud.seed;
    d.samples = bud.samples;
  }
  if (!(d.err <= bud.max_rel_err * std::fabs(d.value)))
    throw BudgetExceeded(std::string(to_string(method)) + ": error bar above the requested budget", d.err);
  return d;
}

inline Density omega_arch(const FieldDescriptor& K, int place, DensityMethod method, const MCBudget& bud = {}) {
  if (place < 0 || place >= K.places()) throw std::invalid_argument("omega_arch: no such place");
  return omega_arch(K.place_complex(place), method, bud);
}

// ---- volume of S_F(a'; B) ---------------------------------------------------------------

struct VolumeReport {
  double estimate = 0, se = 0;
  double predicted = 0, predicted_err = 0;
  double rel_diff = 0, z = 0;
  std::uint64_t samples = 0, seed = 0;
};

// N~_v(a'; x6, x7, x8) with real embeddings s[0..4] of a1..a5.
inline double tilde_N_real(const std::array<double, 5>& s, double x6, double x7, double x8) {
  double a1 = s[0], a2 = s[1], a3 = s[2], a4 = s[3], a5 = s[4];
  double c = a3 * a4 * a4 * a5 * a5 * a5 * x7;
  double inner = a2 * x8 + c;
  return std::max({std::fabs(a2 * a3 * a4 * a5 * x6 * x7 * x8), std::fabs(a1 * a1 * a2 * a2 * a3 * a3 * a4 * x6 * x6 * x6),
                   std::fabs(a1 * a2 * a3 * a3 * a4 * a4 * a5 * a5 * x6 * x6 * x7),
                   std::fabs(a3 * a4 * a5 * x6 * x7 * inner), std::fabs(x7 * x8 * inner / a1)});
}

inline VolumeReport volume_SF_check(const FieldDescriptor& K, const std::array<AlgInt, 5>& ap, double B,
                                    std::uint64_t samples, std::uint64_t seed, int threads = 1) {
  if (!(K.is_rational() || K.is_real_quadratic()))
    throw std::invalid_argument("volume_SF_check: rational or real quadratic fields only");
  if (!(B > 0)) throw std::invalid_argument("volume_SF_check: B must be positive");
  for (const auto& a : ap)
    if (a.is_zero()) throw std::invalid_argument("volume_SF_check: a' must be nonzero");
  const int places = K.places();
  const double eps = K.is_real_quadratic() ? std::exp(K.regulator) : 1.0;
  // per-place embeddings and the caps N~_v <= s_v on the set
  std::array<std::array<double, 5>, 2> sig{};
  std::array<double, 2> scale{}, jac{};
  for (int v = 0; v < places; ++v) {
    for (int j = 0; j < 5; ++j) sig[v][j] = static_cast<double>(K.sigma_ld(ap[j], v));
    scale[v] = K.is_rational() ? B : (v == 0 ? eps * eps * eps * std::sqrt(B) : std::sqrt(B));
    jac[v] = std::fabs(sig[v][1] * sig[v][2] * sig[v][3] * sig[v][4]);
  }
  auto sample = [&](const CounterRng& rng, std::uint64_t c) {
    std::array<double, 2> n{};
    double w = 1;
    for (int v = 0; v < places; ++v) {
      auto d = detail::draw_real(rng, c + 8 * v);
      const auto& s = sig[v];
      double l = std::cbrt(std::fabs(s[0] * s[1] * s[2] * s[3] * s[3] * s[4] * s[4] * s[4]) * scale[v]);
      double x8 = l * d.x0 / s[1];
      double x6 = l * d.x1 / (s[0] * s[1] * s[2] * s[3] * s[4]);
      double x7 = l * d.x2 / (s[2] * s[3] * s[3] * s[4] * s[4] * s[4]);
      n[v] = tilde_N_real(s, x6, x7, x8);
      w *= d.weight * scale[v] / jac[v];
    }
    bool in;
    if (K.is_rational())
      in = n[0] <= B;
    else
      in = n[0] * n[1] <= B && n[0] >= n[1] && n[0] < std::pow(eps, 6) * n[1];
    return in ? w : 0.0;
  };
  auto mc = detail::mc_mean(samples, seed, 3, threads, sample);
  Density om = adelic2d_real();
  double R = K.is_rational() ? 1.0 : K.regulator;
  double Na = std::fabs(static_cast<double>(K.norm(ap[1])) * static_cast<double>(K.norm(ap[2])) *
                        static_cast<double>(K.norm(ap[3])) * static_cast<double>(K.norm(ap[4])));
  double pref = std::pow(2.0, places) * R * B / (3.0 * Na);
  VolumeReport r;
  r.estimate = mc.mean;
  r.se = mc.se;
  r.predicted = pref * std::pow(om.value, places);
  r.predicted_err = pref * places * std::pow(om.value, places - 1) * om.err;
  r.rel_diff = std::fabs(r.estimate / r.predicted - 1);
  r.z = std::fabs(r.estimate - r.predicted) / std::sqrt(r.se * r.se + r.predicted_err * r.predicted_err);
  r.samples = samples;
  r.seed = seed;
  return r;
}

}  // namespace dp4
