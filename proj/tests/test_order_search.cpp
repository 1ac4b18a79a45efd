#include <gtest/gtest.h>

#include "oracle.hpp"
#include "splab/order_search.hpp"

using namespace splab;

namespace {

u64 lpart_brute(u64 n, u64 l) {
  u64 out = 1;
  while (n % l == 0) {
    n /= l;
    out *= l;
  }
  return out;
}

u64 pow_u(u64 b, unsigned k) {
  u64 r = 1;
  while (k--) r *= b;
  return r;
}

}  // namespace

TEST(Sweep, MultiplicativeExamples) {
  const std::vector<MulElement> two{MulElement(BigInt(2))};
  const auto k0 = sweep_mul(two, OrderProfile(2, {0}), PrimeRange(2, 50));
  EXPECT_EQ(k0.matches, (std::vector<u64>{7, 23, 31, 47}));
  EXPECT_EQ(k0.exclusions, (std::vector<u64>{2}));
  EXPECT_EQ(k0.scanned, 14u);
  const auto k1 = sweep_mul(two, OrderProfile(2, {1}), PrimeRange(2, 50));
  EXPECT_EQ(k1.matches, (std::vector<u64>{3, 11, 19, 43}));
}

TEST(Sweep, MultiplicativeAgreesWithOracle) {
  const std::vector<MulElement> xs{MulElement(BigInt(2)), MulElement(BigInt(3))};
  for (u64 l : {2u, 3u}) {
    for (unsigned k1 = 0; k1 <= 2; ++k1) {
      for (unsigned k2 = 0; k2 <= 2; ++k2) {
        const auto r = sweep_mul(xs, OrderProfile(l, {k1, k2}), PrimeRange(2, 2000));
        std::vector<u64> expected;
        for (u64 p : oracle::primes_upto(2000)) {
          if (p <= 3 || p == l) continue;
          const auto P = static_cast<long long>(p);
          if (lpart_brute(oracle::order_by_iteration(2, P), l) == pow_u(l, k1) &&
              lpart_brute(oracle::order_by_iteration(3, P), l) == pow_u(l, k2))
            expected.push_back(p);
        }
        EXPECT_EQ(r.matches, expected) << l << " " << k1 << " " << k2;
      }
    }
  }
}

TEST(Sweep, EllipticMatchesAreSound) {
  const EllipticCurve E = EllipticCurve::parse("0,0,1,-1,0");
  const std::vector<RationalPoint> P{RationalPoint::parse("(0,0)")};
  const auto r = sweep_ec(E, P, OrderProfile(5, {1}), PrimeRange(2, 10'000));
  ASSERT_FALSE(r.matches.empty());
  EXPECT_EQ(r.exclusions, (std::vector<u64>{5, 37}));
  const oracle::Pt base{false, 0, 0};
  for (const auto& row : r.rows) {
    if (row.p > 200) break;
    const auto Pp = static_cast<long long>(row.p);
    const oracle::Curve B{0, 0, 1, Pp - 1, 0, Pp};
    const bool expected = lpart_brute(B.order(base), 5) == 5;
    EXPECT_EQ(row.match, expected) << row.p;
  }
  // above the oracle range: the l-part is exact
  for (u64 p : r.matches) {
    const ReducedCurve C(E, p);
    const FieldPoint R = reduce_point(E, P[0], p);
    const u64 ord = point_order(C, R);
    ASSERT_EQ(ord % 5, 0u);
    ASSERT_NE(ord % 25, 0u);
    ASSERT_TRUE(splab::multiple(C, ord, R).infinity);
    for (const auto& [q, e] : factorize(ord).factors) ASSERT_FALSE(splab::multiple(C, ord / q, R).infinity);
  }
}

TEST(Sweep, ExtendingTheRangeOnlyAppends) {
  const std::vector<MulElement> x{MulElement(BigInt(3), BigInt(5))};
  const auto small = sweep_mul(x, OrderProfile(3, {1}), PrimeRange(2, 3000));
  const auto large = sweep_mul(x, OrderProfile(3, {1}), PrimeRange(2, 6000));
  ASSERT_LE(small.matches.size(), large.matches.size());
  EXPECT_TRUE(std::equal(small.matches.begin(), small.matches.end(), large.matches.begin()));
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const EllipticCurve E = EllipticCurve::parse("0,1,1,-2,0");
  const std::vector<RationalPoint> P{RationalPoint::parse("(0,0)"), RationalPoint::parse("(-1,1)")};
  const auto one = sweep_ec(E, P, OrderProfile(2, {1, 0}), PrimeRange(2, 20'000), Parallelism{1});
  const auto many = sweep_ec(E, P, OrderProfile(2, {1, 0}), PrimeRange(2, 20'000), Parallelism{8});
  EXPECT_EQ(one.matches, many.matches);
  EXPECT_EQ(one.exclusions, many.exclusions);
  ASSERT_EQ(one.rows.size(), many.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) EXPECT_EQ(one.rows[i].l_parts, many.rows[i].l_parts);
}

TEST(Sweep, Errors) {
  const std::vector<MulElement> two{MulElement(BigInt(2))};
  EXPECT_THROW(OrderProfile(4, {1}), std::domain_error);
  EXPECT_THROW(OrderProfile(2, {}), std::domain_error);
  EXPECT_THROW(sweep_mul(two, OrderProfile(2, {1, 1}), PrimeRange(2, 50)), std::domain_error);
  const std::vector<MulElement> minus_one{MulElement(BigInt(-1))};
  EXPECT_THROW(sweep_mul(minus_one, OrderProfile(2, {1}), PrimeRange(2, 50)), std::domain_error);
  const EllipticCurve E = EllipticCurve::parse("0,0,1,-1,0");
  const std::vector<RationalPoint> off{RationalPoint::parse("(1,1)")};
  EXPECT_THROW(sweep_ec(E, off, OrderProfile(2, {1}), PrimeRange(2, 50)), std::domain_error);
}
