#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "dp4/torsor.hpp"

using namespace dp4;

namespace {

// Oracle over Q: all primitive points off the lines with max |x_i| <= B, up to sign.
// x2 != 0 off the lines, so x4 = x0 x3 / x2 and x1 = -x2^2 / (x0 + x3).
std::set<std::array<std::int64_t, 5>> naive_points_Q(std::int64_t B) {
  std::set<std::array<std::int64_t, 5>> out;
  for (std::int64_t x2 = 1; x2 <= B; ++x2)
    for (std::int64_t x0 = -B; x0 <= B; ++x0)
      for (std::int64_t x3 = -B; x3 <= B; ++x3) {
        if ((x0 * x3) % x2 != 0 || x0 + x3 == 0) continue;
        if ((x2 * x2) % (x0 + x3) != 0) continue;
        std::int64_t x4 = x0 * x3 / x2, x1 = -x2 * x2 / (x0 + x3);
        if (std::abs(x4) > B || std::abs(x1) > B) continue;
        std::int64_t g = std::gcd(std::gcd(std::gcd(x0, x1), std::gcd(x2, x3)), x4);
        if (g != 1) continue;
        out.insert({x0, x1, x2, x3, x4});  // x2 > 0 fixes the sign
      }
  return out;
}

TorsorPoint tp(std::initializer_list<std::int64_t> v) {
  TorsorPoint t;
  int i = 0;
  for (auto x : v) t[i++] = AlgInt{x};
  return t;
}

EnumerateOptions opts(std::int64_t B) {
  EnumerateOptions o;
  o.B = Bound(B);
  return o;
}

}  // namespace

TEST(Torsor, DegreeMatrixBlockInvertibleMod2) { EXPECT_TRUE(DegreeMatrix::mod2_block_invertible()); }

TEST(Torsor, PsiOfSmallPoint) {
  auto Q = make_field(FieldTag::Q);
  // a1..a7 = 1, a8 = 0, a9 = -1
  TorsorPoint t = tp({1, 1, 1, 1, 1, 1, 1, 0, -1});
  ASSERT_TRUE(torsor_equation_holds(Q, t));
  ASSERT_TRUE(coprimality_holds(Q, t));
  auto raw = psi_raw(Q, t);
  std::array<AlgInt, 5> want{AlgInt{0}, AlgInt{1}, AlgInt{1}, AlgInt{-1}, AlgInt{0}};
  EXPECT_EQ(raw, want);
  ProjPoint p = psi(Q, t);
  EXPECT_TRUE(on_surface(Q, p));
  EXPECT_FALSE(on_lines(Q, p));
  EXPECT_TRUE(height_condition(Q, t, Bound(1)));
  EXPECT_FALSE(height_condition(Q, t, Bound(1, 2)));
  EXPECT_THROW(psi(Q, tp({1, 1, 1, 1, 1, 1, 1, 1, 1})), std::invalid_argument);
}

TEST(Torsor, TildeNMatchesPsiOnTorsorPoints) {
  std::mt19937_64 rng(5);
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    auto EO = opts(K.is_rational() ? 40 : 12);
    EO.collect_points = true;
    auto res = enumerate_M(K, EO);
    ASSERT_GT(res.points.size(), 0u);
    for (std::size_t i = 0; i < res.points.size(); i += 1 + rng() % 3) {
      const auto& T = res.points[i];
      auto w = psi_wide(K, T);
      for (int v = 0; v < K.places(); ++v) {
        Interval direct = place_max_interval(K, w, v, 128);
        Interval tn = tilde_N(K, std::span<const AlgInt>(T.data(), 8), v);
        EXPECT_LT(std::fabs(direct.mid_d() - tn.mid_d()), 1e-9 * (1 + direct.mid_d())) << to_string(T);
      }
    }
  }
}

TEST(Torsor, PsiLandsOnSurfaceAndHeightsAgree) {
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    std::int64_t B = K.is_rational() ? 60 : 10;
    auto EO = opts(B);
    EO.collect_points = true;
    auto res = enumerate_M(K, EO);
    std::set<ProjPoint> images;
    for (const auto& T : res.points) {
      ASSERT_TRUE(is_valid_torsor_point(K, T));
      ASSERT_TRUE(coprimality_holds(K, T));
      ASSERT_TRUE(in_fundamental_domain(K, T));
      ProjPoint p = psi(K, T);
      ASSERT_TRUE(on_surface(K, p));
      ASSERT_FALSE(on_lines(K, p));
      ASSERT_TRUE(height(K, p, Bound(B)).le);
      images.insert(p);
    }
    EXPECT_EQ(images.size(), res.points.size()) << K.name;  // injective on the domain
    EXPECT_EQ(res.M, static_cast<std::int64_t>(K.mu_order) * res.canonical) << K.name;
  }
}

TEST(Torsor, QCountsMatchNaiveOracle) {
  auto Q = make_field(FieldTag::Q);
  EXPECT_EQ(enumerate_M(Q, opts(1)).canonical, 4);
  EXPECT_EQ(enumerate_M(Q, opts(1)).M, 8);
  for (std::int64_t B : {1, 2, 3, 5, 10, 20, 35}) {
    auto naive = naive_points_Q(B);
    auto EO = opts(B);
    EO.collect_points = true;
    auto res = enumerate_M(Q, EO);
    EXPECT_EQ(res.canonical, static_cast<std::int64_t>(naive.size())) << B;
    std::set<std::array<std::int64_t, 5>> got;
    for (const auto& T : res.points) {
      auto p = psi(Q, T);
      std::array<std::int64_t, 5> x{};
      for (int i = 0; i < 5; ++i) x[i] = p.x[i].x;
      if (x[2] < 0)
        for (auto& c : x) c = -c;
      got.insert(x);
    }
    EXPECT_EQ(got, naive) << B;
  }
}

TEST(Torsor, FastKernelAgreesWithGeneralEngine) {
  auto Q = make_field(FieldTag::Q);
  for (std::int64_t B : {1, 7, 30, 200}) {
    for (bool shifted : {false, true}) {
      auto a = opts(B), b = opts(B);
      a.window.shifted = b.window.shifted = shifted;
      a.collect_points = b.collect_points = true;
      b.force_general = true;
      auto ra = enumerate_M(Q, a), rb = enumerate_M(Q, b);
      EXPECT_EQ(ra.M, rb.M) << B;
      EXPECT_EQ(ra.canonical, rb.canonical) << B;
      EXPECT_EQ(ra.points, rb.points) << B;
    }
  }
}

TEST(Torsor, RationalBoundsAndMonotonicity) {
  auto Q = make_field(FieldTag::Q);
  EXPECT_EQ(enumerate_M(Q, EnumerateOptions{Bound(1, 2)}).M, 0);
  EXPECT_EQ(enumerate_M(Q, EnumerateOptions{Bound(0)}).M, 0);
  std::int64_t prev = 0;
  for (std::int64_t B = 1; B <= 60; ++B) {
    auto c = enumerate_M(Q, opts(B)).canonical;
    EXPECT_GE(c, prev);
    prev = c;
  }
  EXPECT_EQ(enumerate_M(Q, EnumerateOptions{Bound(5, 2)}).canonical, enumerate_M(Q, opts(2)).canonical);
}

TEST(Torsor, LoopOrdersAndThreadsGiveIdenticalResults) {
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qi, FieldTag::Qm3, FieldTag::Qr2, FieldTag::Qr5}) {
    auto K = make_field(tag);
    auto base = opts(K.is_rational() ? 300 : 15);
    base.collect_points = true;
    auto ref = enumerate_M(K, base);
    std::vector<LoopOrder> orders{LoopOrder::Reverse, LoopOrder::Shuffled};
    if (!K.is_real_quadratic()) orders.push_back(LoopOrder::Swapped);
    for (LoopOrder o : orders)
      for (int th : {1, 4}) {
        auto e = base;
        e.order = o;
        e.threads = th;
        e.shuffle_seed = 77;
        auto r = enumerate_M(K, e);
        EXPECT_EQ(r.M, ref.M) << K.name << " " << to_string(o);
        EXPECT_EQ(r.points, ref.points) << K.name << " " << to_string(o);
      }
  }
}

TEST(Torsor, WindowChangePreservesCount) {
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    auto a = opts(K.is_rational() ? 200 : 12), b = a;
    b.window.shifted = true;
    auto ra = enumerate_M(K, a), rb = enumerate_M(K, b);
    EXPECT_EQ(ra.canonical, rb.canonical) << K.name;
    EXPECT_EQ(ra.M, rb.M) << K.name;
  }
}

TEST(Torsor, UnitActionPreservesImageAndEquation) {
  std::mt19937_64 rng(9);
  for (FieldTag tag : {FieldTag::Qi, FieldTag::Qm3, FieldTag::Qr2, FieldTag::Qr5}) {
    auto K = make_field(tag);
    auto EO = opts(10);
    EO.collect_points = true;
    auto res = enumerate_M(K, EO);
    for (std::size_t i = 0; i < std::min<std::size_t>(res.points.size(), 50); ++i) {
      std::array<AlgInt, 6> u;
      for (auto& x : u) {
        x = K.roots_of_unity()[rng() % K.mu_order];
        if (K.eps) x = K.mul(x, K.eps_pow(static_cast<int>(rng() % 5) - 2));
      }
      TorsorPoint T2 = apply_unit_action(K, res.points[i], u);
      EXPECT_TRUE(torsor_equation_holds(K, T2));
      EXPECT_TRUE(coprimality_holds(K, T2));
      EXPECT_EQ(psi(K, T2), psi(K, res.points[i]));
    }
  }
}

TEST(Torsor, LoopBoundsContainEveryPoint) {
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qi, FieldTag::Qr2}) {
    auto K = make_field(tag);
    Bound B(K.is_rational() ? 100 : 12);
    auto EO = opts(B.num);
    EO.collect_points = true;
    for (const auto& T : enumerate_M(K, EO).points)
      for (std::size_t k = 0; k < 8; ++k) {
        LoopBox box = derive_loop_bounds(K, std::span<const AlgInt>(T.data(), k), B);
        ASSERT_FALSE(box.empty);
        if (T[k].is_zero()) {
          EXPECT_TRUE(box.zero_allowed);
          continue;
        }
        EXPECT_LE(K.abs_norm(T[k]), box.norm_bound) << k;
        for (int v = 0; v < K.places(); ++v) EXPECT_LE(K.abs_v_ld(T[k], v), box.place[v]) << k;
      }
  }
}

TEST(Torsor, PsiExamples) {
  auto Q = make_field(FieldTag::Q);
  auto img = [&](std::initializer_list<std::int64_t> v) {
    auto r = psi_raw(Q, tp(v));
    std::array<std::int64_t, 5> x{};
    for (int i = 0; i < 5; ++i) x[i] = r[i].x;
    return x;
  };
  using A = std::array<std::int64_t, 5>;
  EXPECT_EQ(img({1, 1, 1, 1, 1, 1, 1, 1, -2}), (A{1, 1, 1, -2, -2}));
  EXPECT_EQ(img({1, 1, 1, 1, 1, 1, 1, 0, -1}), (A{0, 1, 1, -1, 0}));
  EXPECT_EQ(img({1, 1, 1, 1, 1, 1, 1, -1, 0}), (A{-1, 1, 1, 0, 0}));
  for (auto T : {tp({1, 1, 1, 1, 1, 1, 1, 1, -2}), tp({1, 1, 1, 1, 1, 1, 1, -1, 0})})
    EXPECT_TRUE(on_surface(Q, psi(Q, T)));
}

TEST(Torsor, TildeNExamples) {
  auto Q = make_field(FieldTag::Q);
  auto tn = [&](std::initializer_list<std::int64_t> v) {
    auto T = tp(v);
    return tilde_N(Q, std::span<const AlgInt>(T.data(), 8), 0).mid_d();
  };
  EXPECT_DOUBLE_EQ(tn({1, 1, 1, 1, 1, 1, 1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(tn({1, 1, 1, 1, 1, 1, 1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(tn({1, 1, 1, 1, 1, 2, 1, 1}), 8.0);
  EXPECT_THROW(tn({0, 1, 1, 1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST(Torsor, HeightConditionExamples) {
  auto Q = make_field(FieldTag::Q);
  auto T = tp({1, 1, 1, 1, 1, 1, 1, 1, -2});
  EXPECT_TRUE(height_condition(Q, T, Bound(2)));
  EXPECT_FALSE(height_condition(Q, T, Bound(3, 2)));
  EXPECT_FALSE(height_condition(Q, T, Bound(0)));
}

TEST(Torsor, FundamentalDomainExamples) {
  auto Q = make_field(FieldTag::Q);
  EXPECT_TRUE(in_fundamental_domain(Q, tp({1, 1, 1, 1, 1, 1, 1, 1, -2})));
  // negate a6 via the unit action
  std::array<AlgInt, 6> flip{AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{-1}};
  auto T2 = apply_unit_action(Q, tp({1, 1, 1, 1, 1, 1, 1, 1, -2}), flip);
  EXPECT_FALSE(in_fundamental_domain(Q, T2));

  auto K = make_field(FieldTag::Qr2);
  TorsorPoint T;
  for (int i = 0; i < 8; ++i) T[i] = AlgInt{1};
  T[8] = AlgInt{-2};
  ASSERT_TRUE(is_valid_torsor_point(K, T));
  EXPECT_TRUE(in_fundamental_domain(K, T));
  std::array<AlgInt, 6> u{*K.eps, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}};
  EXPECT_FALSE(in_fundamental_domain(K, apply_unit_action(K, T, u)));
}

TEST(Torsor, LoopBoundExamples) {
  auto Q = make_field(FieldTag::Q);
  auto b0 = derive_loop_bounds(Q, {}, Bound(50));
  EXPECT_EQ(b0.norm_bound, 7);  // floor(sqrt(50))
  std::array<AlgInt, 6> ones{AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}};
  auto b6 = derive_loop_bounds(Q, std::span<const AlgInt>(ones.data(), 6), Bound(2));
  ASSERT_FALSE(b6.empty);
  EXPECT_GE(b6.place[0], 2.0L);
  EXPECT_LT(b6.place[0], 3.0L);
  for (FieldTag tag : kAllFields) EXPECT_TRUE(derive_loop_bounds(make_field(tag), {}, Bound(1, 2)).empty);
}

TEST(Torsor, TildeNIsCubicInLastThree) {
  std::mt19937_64 rng(11);
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    for (int trial = 0; trial < 50; ++trial) {
      std::array<AlgInt, 8> a;
      const std::int64_t ys = K.is_rational() ? 0 : 1;
      for (auto& x : a) x = AlgInt{static_cast<std::int64_t>(rng() % 7) - 3, ys * (static_cast<std::int64_t>(rng() % 5) - 2)};
      if (a[0].is_zero()) a[0] = AlgInt{1};
      AlgInt t{static_cast<std::int64_t>(rng() % 5) + 1, ys * (static_cast<std::int64_t>(rng() % 3) - 1)};
      auto b = a;
      for (int j = 5; j < 8; ++j) b[j] = K.mul(t, a[j]);
      for (int v = 0; v < K.places(); ++v) {
        double base = tilde_N(K, a, v).mid_d(), scaled = tilde_N(K, b, v).mid_d();
        double tv = static_cast<double>(K.abs_v_ld(t, v));
        EXPECT_NEAR(scaled, tv * tv * tv * base, 1e-9 * (1 + scaled)) << K.name;
      }
    }
  }
}

TEST(Torsor, UnitActionPreservesHeightProduct) {
  std::mt19937_64 rng(13);
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    auto EO = opts(K.is_rational() ? 50 : 10);
    EO.collect_points = true;
    auto res = enumerate_M(K, EO);
    for (std::size_t i = 0; i < std::min<std::size_t>(res.points.size(), 40); ++i) {
      const auto& T = res.points[i];
      std::array<AlgInt, 6> u;
      for (auto& x : u) {
        x = K.roots_of_unity()[rng() % K.mu_order];
        if (K.eps) x = K.mul(x, K.eps_pow(static_cast<int>(rng() % 3) - 1));
      }
      auto T2 = apply_unit_action(K, T, u);
      double p1 = 1, p2 = 1;
      for (int v = 0; v < K.places(); ++v) {
        p1 *= tilde_N(K, std::span<const AlgInt>(T.data(), 8), v).mid_d();
        p2 *= tilde_N(K, std::span<const AlgInt>(T2.data(), 8), v).mid_d();
      }
      EXPECT_NEAR(p1, p2, 1e-9 * p1) << K.name;
    }
  }
}

TEST(Torsor, HeightConditionMatchesGeometryHeight) {
  // H(psi(T)) <= B iff height_condition(T, B), on enumerated points and a ladder of bounds
  auto Q = make_field(FieldTag::Q);
  auto EO = opts(400);
  EO.collect_points = true;
  auto res = enumerate_M(Q, EO);
  ASSERT_GE(res.points.size(), 1000u);
  int checked = 0;
  for (const auto& T : res.points) {
    auto p = psi(Q, T);
    for (std::int64_t B : {1, 3, 10, 40, 150, 400}) {
      ASSERT_EQ(height(Q, p, Bound(B)).le, height_condition(Q, T, Bound(B))) << to_string(T) << " " << B;
      ++checked;
    }
  }
  EXPECT_GE(checked, 10000);
}
