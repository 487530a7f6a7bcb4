#include <gtest/gtest.h>

#include <cmath>

#include "crg/counting.hpp"
#include "crg/cosets.hpp"
#include "oracles.hpp"

using namespace crg;

TEST(Gaussian, Values) {
  EXPECT_EQ(gaussian_coefficient(5, 0, 2), 1);
  EXPECT_EQ(gaussian_coefficient(5, 5, 2), 1);
  EXPECT_EQ(gaussian_coefficient(4, 2, 2), 35);
  EXPECT_EQ(gaussian_coefficient(2, 1, 4), 5);
  EXPECT_EQ(gaussian_coefficient(6, 3, 2), 1395);
}

TEST(Gaussian, MatchesRecurrence) {
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (unsigned n = 0; n <= 8; ++n)
      for (unsigned k = 0; k <= n; ++k)
        EXPECT_EQ(gaussian_coefficient(n, k, q), BigInt(oracle::gaussian_recurrence(n, k, q))) << q << " " << n << " " << k;
}

TEST(Gaussian, LargeArgumentsStayExact) {
  const BigInt g = gaussian_coefficient(48, 24, 2);
  EXPECT_GT(g, BigInt(std::numeric_limits<std::uint64_t>::max()));
  EXPECT_EQ(g, gaussian_coefficient(47, 23, 2) + big_pow(2, 24) * gaussian_coefficient(47, 24, 2));
  EXPECT_EQ(gaussian_coefficient(48, 1, 2), big_pow(2, 48) - 1);
  EXPECT_EQ(gaussian_coefficient(48, 7, 2), gaussian_coefficient(48, 41, 2));
}

TEST(Mobius, Values) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(2), -1);
  EXPECT_EQ(mobius(4), 0);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_EQ(mobius(30), -1);
  EXPECT_EQ(mobius(12), 0);
}

TEST(CountWithBase, Examples) {
  EXPECT_EQ(count_with_base(2, 4, 2, 2), 5);
  EXPECT_EQ(count_with_base(2, 4, 2, 1), 30);
  EXPECT_EQ(count_with_base(3, 4, 4, 4), 1);
  try {
    count_with_base(2, 4, 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_divisor);
  }
}

TEST(CountWithBase, SumsToGaussianOnGrid) {
  for (std::uint64_t q : {2, 3, 4, 8, 9})
    for (unsigned ell = 1; ell <= 12; ++ell)
      for (unsigned delta = 1; delta <= ell; ++delta) {
        BigInt sum = 0;
        for (const auto& [m, n] : counts_by_base(q, ell, delta)) {
          EXPECT_GE(n, 0);
          sum += n;
        }
        EXPECT_EQ(sum, gaussian_coefficient(ell, delta, q));
      }
}

TEST(CountWithBase, MatchesEnumeration) {
  for (auto [p, s, ell] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{2, 1, 4}, {2, 1, 6}, {3, 1, 4}, {2, 2, 2}, {2, 2, 3}}) {
    auto F = Field::make(p, s, ell);
    for (unsigned delta = 1; delta <= ell; ++delta) {
      std::map<unsigned, BigInt> got;
      for (const auto& S : enumerate_subspaces(F, delta)) got[base_field(S).m] += 1;
      for (const auto& [m, n] : counts_by_base(F->q(), ell, delta)) EXPECT_EQ(got[m], n) << ell << " " << delta << " m=" << m;
    }
  }
}

TEST(OrbitFormula, Examples) {
  EXPECT_EQ(orbit_count_formula(2, 4, 2), 3);
  EXPECT_EQ(orbit_count_formula(2, 4, 1), 1);
  EXPECT_EQ(orbit_count_formula(5, 3, 3), 1);
  EXPECT_EQ(orbit_count_formula(2, 6, 3), 23);
}

TEST(OrbitFormula, IntegralEverywhere) {
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 16})
    for (unsigned ell = 1; ell <= 16; ++ell)
      for (unsigned delta = 1; delta <= ell; ++delta) EXPECT_NO_THROW(orbit_count_formula(q, ell, delta));
  // A base-field illustration far beyond desk scale.
  EXPECT_GT(orbit_count_formula(2, 48, 24), 0);
}

TEST(OrbitFormula, MatchesIndependentOrbitWalk) {
  for (auto [p, s, ell] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{2, 1, 4}, {2, 1, 5}, {3, 1, 2}, {3, 1, 3}, {2, 2, 2}}) {
    auto F = Field::make(p, s, ell);
    oracle::SlowField ref(p, F->modulus());
    for (unsigned delta = 1; delta <= ell; ++delta) {
      if (std::pow(static_cast<double>(F->order()), delta) > 3e5) continue;
      const auto subs = oracle::all_subspaces(ref, F->q(), delta);
      EXPECT_EQ(orbit_count_formula(F->q(), ell, delta), BigInt(oracle::orbit_count(ref, subs)));
    }
  }
}
