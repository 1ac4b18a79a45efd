#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "splab/group.hpp"
#include "splab/mulgroup.hpp"

using namespace splab;

namespace {

/// Is there m in [1, N]^s with sum m a == 0 and sum m b != 0 (mod N)?
bool containment_fails_brute(const std::vector<u64>& a, const std::vector<u64>& b, u64 N) {
  std::vector<u64> m(a.size(), 1);
  for (;;) {
    u64 sa = 0, sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sa = (sa + m[i] * a[i]) % N;
      sb = (sb + m[i] * b[i]) % N;
    }
    if (sa == 0 && sb != 0) return true;
    std::size_t d = a.size();
    while (d > 0 && m[d - 1] == N) --d;
    if (d == 0) return false;
    ++m[d - 1];
    for (std::size_t k = d; k < a.size(); ++k) m[k] = 1;
  }
}

}  // namespace

TEST(KernelContainment, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const u64 N = 1 + rng() % 36;
    const std::size_t s = 1 + rng() % 3;
    std::vector<u64> a(s), b(s);
    const bool dependent = rng() % 2 == 0;
    const u64 c = rng() % N;
    for (std::size_t i = 0; i < s; ++i) {
      a[i] = rng() % N;
      b[i] = dependent ? c * a[i] % N : rng() % N;
    }
    const KernelContainment kc = kernel_containment(a, b, N);
    ASSERT_EQ(!kc.holds, containment_fails_brute(a, b, N)) << "N=" << N << " trial " << trial;
    if (kc.holds) {
      for (std::size_t i = 0; i < s; ++i) {
        const u64 mult = static_cast<u64>(kc.multiplier.residue);
        ASSERT_EQ(mult * a[i] % N, b[i] % N);
      }
      if (dependent) ASSERT_EQ(BigInt(c) % kc.multiplier.modulus, kc.multiplier.residue);
    } else {
      for (u64 v : kc.witness) ASSERT_GE(v, 1u);
    }
  }
}

TEST(DiscreteLog, MatchesEnumerationInFpStar) {
  for (u64 p : {7u, 11u, 101u, 257u, 997u}) {
    const FpStar G(p);
    for (u64 base = 2; base < std::min<u64>(p, 40); ++base) {
      u64 acc = 1;
      std::vector<std::optional<u64>> expected(p);
      for (u64 e = 0; e < oracle::order_by_iteration(static_cast<long long>(base), static_cast<long long>(p)); ++e) {
        if (!expected[acc]) expected[acc] = e;
        acc = acc * base % p;
      }
      for (u64 t = 1; t < p; ++t) ASSERT_EQ(discrete_log(G, base, t), expected[t]) << p << " " << base << " " << t;
    }
  }
}

TEST(DiscreteLog, BabyStepGiantStepBound) {
  const FpStar G(101);
  EXPECT_EQ(bsgs_dlog(G, u64{2}, u64{1}, 100), 0u);
  EXPECT_EQ(bsgs_dlog(G, u64{2}, mod_pow(2, 77, 101), 100), 77u);
  EXPECT_FALSE(bsgs_dlog(G, u64{2}, mod_pow(2, 77, 101), 50));
}

TEST(CyclicGenerator, FpStarIsAlwaysCyclic) {
  const FpStar G(61);
  const std::vector<u64> elems{mod_pow(2, 6, 61), mod_pow(2, 10, 61), mod_pow(2, 15, 61)};
  const auto gen = cyclic_generator(G, std::span<const u64>(elems));
  ASSERT_TRUE(gen);
  // orders 10, 6 and 4; their lcm is the full group order
  EXPECT_EQ(element_order(G, *gen), 60u);
}
