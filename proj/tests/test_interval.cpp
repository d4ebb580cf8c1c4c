#include <gtest/gtest.h>

#include <cmath>

#include "dp4/bound.hpp"
#include "dp4/interval.hpp"

using namespace dp4;

TEST(Interval, RatioEnclosesExactValue) {
  for (mpfr_prec_t p : {53, 128, 1024}) {
    Interval x = Interval::from_ratio(1, 3, p);
    Interval three = Interval::from_int(3, p);
    Interval one = x * three;
    EXPECT_TRUE(one.contains(Interval::from_int(1, p))) << p;
    EXPECT_GT(x.radius_d(), 0.0);
  }
}

TEST(Interval, WidthShrinksWithPrecision) {
  double prev = 1;
  for (mpfr_prec_t p : {64, 128, 256, 512}) {
    double r = Interval::sqrt_of(2, p).radius_d();
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Interval, Int128EndpointsExact) {
  i128 big = static_cast<i128>(1) << 100;
  Interval a = Interval::from_int(big + 1, 256);
  EXPECT_EQ(a.radius_d(), 0.0);
  Interval b = Interval::from_int(-(big + 1), 256);
  EXPECT_TRUE((a + b).contains_zero());
  Interval c = Interval::from_int(big + 1, 64);  // rounded outward
  EXPECT_TRUE(c.contains(a));
}

TEST(Interval, SqrtSquaredContainsArgument) {
  for (std::int64_t n : {2, 3, 5, 1000003}) {
    Interval s = Interval::sqrt_of(n, 128);
    EXPECT_TRUE((s * s).contains(Interval::from_int(n, 128))) << n;
  }
}

TEST(Interval, SignedProductsAndAbs) {
  Interval a = Interval::from_int(-3, 64) + Interval::from_ratio(1, 7, 64);  // about -2.857
  Interval b = Interval::from_int(2, 64);
  EXPECT_LT((a * b).hi_d(), -5.7);
  EXPECT_GT((a * b).lo_d(), -5.72);
  EXPECT_NEAR(a.abs().mid_d(), 20.0 / 7, 1e-15);
  EXPECT_NEAR((b / a).mid_d(), -0.7, 1e-15);
}

TEST(Interval, LogExpRoundTrip) {
  Interval x = Interval::from_ratio(22, 7, 200);
  Interval y = x.log().exp();
  EXPECT_TRUE(y.contains(x));
  EXPECT_THROW(Interval::from_int(0, 64).log(), CertificationError);
  EXPECT_NEAR(Interval::from_ratio(-21, 10000, 128).exp().mid_d(), std::exp(-0.0021), 1e-16);
}

TEST(Interval, ThreeValuedComparisons) {
  Interval a = Interval::from_ratio(1, 3, 128), b = Interval::from_ratio(1, 2, 128);
  EXPECT_EQ(certainly_le(a, b), std::optional<bool>(true));
  EXPECT_EQ(certainly_le(b, a), std::optional<bool>(false));
  EXPECT_FALSE(certainly_le(a, a).has_value());
  Interval one = Interval::from_int(1, 128);
  EXPECT_EQ(certainly_le(one, one), std::optional<bool>(true));  // degenerate intervals decide
  EXPECT_EQ(certainly_lt(one, one), std::optional<bool>(false));
}

TEST(Interval, EscalationLadder) {
  int esc = 0;
  auto r = decide_with_escalation(
      [](mpfr_prec_t p) -> std::optional<bool> {
        if (p < 512) return std::nullopt;
        return true;
      },
      &esc);
  EXPECT_EQ(r, std::optional<bool>(true));
  EXPECT_EQ(esc, 2);
  esc = 0;
  EXPECT_FALSE(decide_with_escalation([](mpfr_prec_t) { return std::optional<bool>(); }, &esc).has_value());
  EXPECT_EQ(esc, 4);
}

TEST(Bound, ParseForms) {
  EXPECT_EQ(Bound::parse("12"), Bound(12));
  EXPECT_EQ(Bound::parse("3/2"), Bound(3, 2));
  EXPECT_EQ(Bound::parse("6/4"), Bound(3, 2));
  EXPECT_EQ(Bound::parse("0.5"), Bound(1, 2));
  EXPECT_EQ(Bound::parse("1e6"), Bound(1000000));
  EXPECT_EQ(Bound::parse("2.5e3"), Bound(2500));
  EXPECT_EQ(Bound::parse(" 7 "), Bound(7));
  EXPECT_THROW(Bound::parse(""), std::invalid_argument);
  EXPECT_THROW(Bound::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Bound::parse("1.2.3"), std::invalid_argument);
  EXPECT_THROW(Bound(1, 0), std::invalid_argument);
}

TEST(Bound, TextRoundTrip) {
  for (Bound b : {Bound(0), Bound(1), Bound(7, 3), Bound(1000000), Bound(-5, 2)}) EXPECT_EQ(Bound::parse(b.str()), b);
}

TEST(Bound, IntegerHelpers) {
  Bound b(10);
  EXPECT_EQ(b.floor_div(3), 3);
  EXPECT_EQ(b.floor_sqrt_div(1), 3);
  EXPECT_EQ(b.floor_cbrt_div(1), 2);
  EXPECT_EQ(Bound(7, 2).floor(), 3);
  EXPECT_EQ(Bound(-7, 2).floor(), -4);
  EXPECT_TRUE(Bound(3, 2).ge_int(1));
  EXPECT_FALSE(Bound(3, 2).ge_int(2));
  EXPECT_EQ(isqrt(static_cast<i128>(1) << 62), static_cast<std::int64_t>(1) << 31);
  EXPECT_EQ(icbrt(999999999999LL), 9999);
  EXPECT_THROW(checked_mul(INT64_MAX, 2), ArithmeticOverflow);
  EXPECT_THROW(narrow(static_cast<i128>(INT64_MAX) + 1), ArithmeticOverflow);
}
