#include <gtest/gtest.h>

#include "dp4/bijection.hpp"
#include "dp4/direct.hpp"

using namespace dp4;

TEST(Direct, SmallQCounts) {
  EXPECT_EQ(direct_count_Q(Bound(1)).count, 4);
  EXPECT_EQ(direct_count_Q(Bound(1, 2)).count, 0);
  EXPECT_EQ(direct_count_Q(Bound(0)).count, 0);
  EXPECT_EQ(direct_count_Q(Bound(7, 2)).count, direct_count_Q(Bound(3)).count);
}

TEST(Direct, BEquals2ContainsKnownPoint) {
  DirectOptions o;
  o.collect_points = true;
  auto r = direct_count_Q(Bound(2), o);
  auto Q = make_field(FieldTag::Q);
  ProjPoint p = canonicalize(Q, {AlgInt{2}, AlgInt{-1}, AlgInt{2}, AlgInt{2}, AlgInt{2}});
  EXPECT_TRUE(std::binary_search(r.points.begin(), r.points.end(), p));
  EXPECT_EQ(static_cast<std::int64_t>(r.points.size()), r.count);
}

TEST(Direct, ChartMatchesFullBoxScan) {
  for (std::int64_t B = 1; B <= 20; ++B) EXPECT_EQ(direct_count_Q(Bound(B)).count, full_box_scan_Q(B)) << B;
}

TEST(Direct, EmittedPointsAreValid) {
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    DirectOptions o;
    o.collect_points = true;
    Bound B(K.is_rational() ? 200 : 10);
    auto r = direct_count(K, B, o);
    EXPECT_GT(r.count, 0);
    for (const auto& p : r.points) {
      ASSERT_TRUE(on_surface(K, p)) << to_string(p);
      ASSERT_FALSE(on_lines(K, p)) << to_string(p);
      ASSERT_TRUE(height(K, p, B).le) << to_string(p);
      ASSERT_EQ(canonicalize(K, p.x), p);
    }
  }
}

TEST(Direct, ReversedOrderAndThreadsSamePointSet) {
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qi, FieldTag::Qr5}) {
    auto K = make_field(tag);
    Bound B(K.is_rational() ? 300 : 12);
    DirectOptions a, b;
    a.collect_points = b.collect_points = true;
    b.reverse = true;
    b.threads = 4;
    EXPECT_EQ(direct_count(K, B, a).points, direct_count(K, B, b).points) << K.name;
  }
}

TEST(Direct, LimitsAreEnforced) {
  EXPECT_THROW(direct_count_Q(Bound(10001)), LimitExceeded);
  EXPECT_THROW(direct_count_quadratic(make_field(FieldTag::Qi), Bound(51)), LimitExceeded);
  DirectOptions o;
  o.limit = 20000;
  EXPECT_NO_THROW(direct_count_Q(Bound(10001), o));
  EXPECT_EQ(direct_count_quadratic(make_field(FieldTag::Qr2), Bound(0)).count, 0);
}

TEST(Direct, AgreesWithTorsorOnLadders) {
  for (std::int64_t B : {1, 2, 5, 10, 50, 100, 500, 1000}) {
    EnumerateOptions e;
    e.B = Bound(B);
    EXPECT_EQ(direct_count_Q(Bound(B)).count, enumerate_M(make_field(FieldTag::Q), e).canonical) << B;
  }
  for (FieldTag tag : {FieldTag::Qi, FieldTag::Qm2, FieldTag::Qm3, FieldTag::Qm7, FieldTag::Qm11, FieldTag::Qr2,
                       FieldTag::Qr5}) {
    auto K = make_field(tag);
    for (std::int64_t B : {1, 2, 5, 10, 20}) {
      EnumerateOptions e;
      e.B = Bound(B);
      EXPECT_EQ(direct_count_quadratic(K, Bound(B)).count, enumerate_M(K, e).canonical) << K.name << " " << B;
    }
  }
}

TEST(Bijection, NoMismatches) {
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qi, FieldTag::Qm3, FieldTag::Qr2, FieldTag::Qr5}) {
    auto K = make_field(tag);
    for (std::int64_t B : {1, 3, 10}) {
      auto r = bijection_check(K, Bound(B));
      EXPECT_EQ(r.mismatches(), 0u) << K.name << " " << B;
      EXPECT_EQ(r.direct_count, r.torsor_count);
    }
  }
  auto r = bijection_check(make_field(FieldTag::Q), Bound(100));
  EXPECT_EQ(r.mismatches(), 0u);
  EXPECT_EQ(bijection_check(make_field(FieldTag::Q), Bound(1)).direct_count, 4);
}
