#include <gtest/gtest.h>

#include <cmath>

#include "dp4/euler.hpp"
#include "dp4/geometry.hpp"
#include "dp4/theta.hpp"

using namespace dp4;

namespace {

// Number of roots of the minimal polynomial of the ring generator mod p.
int roots_mod_p(const FieldDescriptor& K, std::int64_t p) {
  int n = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = K.half ? x * x - x + (1 - K.m) / 4 : x * x - K.m;
    if (((v % p) + p) % p == 0) ++n;
  }
  return n;
}

}  // namespace

TEST(Euler, SmallFactors) {
  // (1/2)^6 (1 + 3 + 1/4) and (2/3)^6 (1 + 2 + 1/9)
  EXPECT_EQ(euler_factor(2), mpq_class(1, 64) * mpq_class(17, 4));
  EXPECT_EQ(euler_factor(2), mpq_class(17, 256));
  EXPECT_EQ(euler_factor(3), mpq_class(64, 729) * mpq_class(28, 9));
  EXPECT_EQ(euler_factor(3), mpq_class(1792, 6561));
  mpq_class q(1000000007), gap = (1 - euler_factor(1000000007)) * q * q;  // 20 - 64/q + ...
  EXPECT_GT(gap, 19);
  EXPECT_LT(gap, 20);
  EXPECT_THROW(euler_factor(1), std::invalid_argument);
}

TEST(Euler, SeriesCoefficients) {
  // (1 - x)^6 (1 + 6x + x^2) by direct convolution
  std::array<long, 7> b{1, -6, 15, -20, 15, -6, 1};
  std::array<long, 9> c{};
  const long q[3] = {1, 6, 1};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j) c[i + j] += b[i] * q[j];
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], -20);
  EXPECT_EQ(c[3], 64);
  for (long qv : {5L, 11L, 97L}) {
    mpq_class x(1, qv), s = 0, xp = 1;
    for (long ci : c) {
      s += ci * xp;
      xp *= x;
    }
    EXPECT_EQ(s, euler_factor(qv));
  }
}

TEST(Euler, LogBoundOnGrid) {
  for (int i = 1; i <= 100000; ++i) {
    long double x = static_cast<long double>(i) / (11.0L * 100000);
    long double f = std::pow(1 - x, 6) * (1 + 6 * x + x * x);
    ASSERT_LT(f, 1.0L) << static_cast<double>(x);
    ASSERT_LE(-std::log(f), 21 * x * x) << static_cast<double>(x);
  }
}

TEST(Euler, SplittingMatchesRootCount) {
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    if (K.is_rational()) continue;
    for (std::int64_t p : primes_up_to(200)) {
      int r = roots_mod_p(K, p);
      bool ramified = K.disc % p == 0;
      int chi = kronecker(K.disc, p);
      if (ramified)
        EXPECT_EQ(chi, 0) << K.name << " " << p;
      else
        EXPECT_EQ(chi, r == 2 ? 1 : -1) << K.name << " " << p;
    }
  }
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(-7, 2), 1);
}

TEST(Euler, PrimeIdealNorms) {
  EXPECT_EQ(prime_ideal_norms(make_field(FieldTag::Q), 100).size(), 25u);
  // Q(i): 2 ramified, 5 = (2+i)(2-i), 3 inert with norm 9
  auto n = prime_ideal_norms(make_field(FieldTag::Qi), 13);
  EXPECT_EQ(n, (std::vector<std::int64_t>{2, 5, 5, 9, 13, 13}));
}

TEST(Euler, PartialProductMatchesDoubleLoop) {
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qi, FieldTag::Qr2}) {
    auto K = make_field(tag);
    double direct = 1;
    for (auto q : prime_ideal_norms(K, 5000)) direct *= std::pow(1 - 1.0 / q, 6) * (1 + 6.0 / q + 1.0 / (1.0 * q * q));
    auto e = finite_product(K, 5000);
    EXPECT_NEAR(e.value, direct, 1e-13 * direct);
    EXPECT_LE(e.partial_lo, e.partial_hi);
    EXPECT_LT(e.tail_lo, e.partial_lo);
  }
  EXPECT_THROW(finite_product(make_field(FieldTag::Q), 10), std::invalid_argument);
}

TEST(Euler, DoublingStaysInsideTailInterval) {
  for (FieldTag tag : kAllFields) {
    auto K = make_field(tag);
    for (std::int64_t P : {100, 1000, 10000}) {
      auto a = finite_product(K, P), b = finite_product(K, 2 * P);
      EXPECT_GE(b.partial_lo, a.tail_lo) << K.name << " " << P;
      EXPECT_LE(b.partial_hi, a.tail_hi) << K.name << " " << P;
    }
  }
}

TEST(Theta, TablesVanishTogether) {
  for (Subset J = 0; J < 32; ++J)
    for (long q : {2L, 3L, 9L}) EXPECT_EQ(theta0(J) == 0, theta1(J, q) == 0) << subset_str(J);
  EXPECT_GT(theta1(bit(3) | bit(4), 2), 0);
  EXPECT_GT(theta1(bit(4) | bit(5), 2), 0);
  EXPECT_EQ(theta0(bit(3) | bit(5)), 0);
  EXPECT_THROW(theta0(32), std::invalid_argument);
}

TEST(Theta, MobiusExamples) {
  auto a = mobius_local_check(2, 0);
  EXPECT_EQ(a.lhs, mpq_class(1, 2));
  EXPECT_EQ(a.rhs, mpq_class(1, 2));
  for (long q : {2L, 3L, 5L}) {
    auto b = mobius_local_check(q, bit(1) | bit(2));
    EXPECT_EQ(b.lhs, 0);
    EXPECT_EQ(b.rhs, 0);
  }
  auto c = mobius_local_check(3, bit(4));
  EXPECT_EQ(c.lhs, mpq_class(8, 27));
  EXPECT_TRUE(c.ok());
}

TEST(Theta, MobiusIdentityAllSubsets) {
  int checks = 0;
  for (long q : {2L, 3L, 4L, 5L, 7L, 9L, 25L, 49L})
    for (Subset J = 0; J < 32; ++J) {
      auto r = mobius_local_check(q, J);
      EXPECT_TRUE(r.ok()) << q << " " << subset_str(J) << " " << r.lhs << " vs " << r.rhs;
      ++checks;
    }
  EXPECT_EQ(checks, 8 * 32);
}

TEST(Theta, MeanEqualsEulerFactorAndPointCount) {
  for (long q : {2L, 3L, 4L, 5L, 7L, 9L, 11L, 13L, 121L}) EXPECT_EQ(theta1_mean(q), euler_factor(q)) << q;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    mpq_class x(1, p), u = 1 - x, u6 = u * u * u * u * u * u;
    mpq_class resolved(count_Fp(p) + 4 * p, p * p);
    EXPECT_EQ(u6 * resolved, euler_factor(p)) << p;
  }
}
