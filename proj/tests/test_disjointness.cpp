#include "gadgetforge/disjointness.hpp"
#include "gadgetforge/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

using namespace gadgetforge;

TEST(Disj0, SupportAndSides) {
  auto d = build_disj0_distribution(4, 2);
  EXPECT_EQ(d.support.size(), 4u);
  EXPECT_EQ(d.color, 0);
  for (const auto& [r, p] : d.support) {
    EXPECT_EQ(r.left.size(), oracle::choose(3, 1));
    EXPECT_EQ(p, Rational(1, 4));
  }
}

TEST(Disj0, MonochromaticAndCoversZeroCells) {
  for (std::uint32_t m = 2; m <= 10; ++m) {
    for (std::uint32_t k = 1; 100 * k < 99 * m && k <= m; ++k) {
      DisjGadget dg(m, k);
      auto d = build_disj0_distribution(m, k);
      auto pg = disj_gadget_matrix(dg);
      EXPECT_TRUE(verify_monochromatic(d, pg).ok);
      std::vector<std::uint8_t> covered(dg.size() * dg.size(), 0);
      for (const auto& [r, p] : d.support)
        for (auto a : r.left)
          for (auto b : r.right) covered[a * dg.size() + b] = 1;
      for (std::uint64_t a = 0; a < dg.size(); ++a)
        for (std::uint64_t b = 0; b < dg.size(); ++b)
          if ((dg.unrank(a) & dg.unrank(b)) != 0) EXPECT_TRUE(covered[a * dg.size() + b]);
    }
  }
}

TEST(Disj0, RejectsLargeK) {
  EXPECT_THROW(build_disj0_distribution(10, 10), ValidationError);
  EXPECT_THROW(build_disj0_distribution(10, 0), ValidationError);
}

TEST(Disj1, SampledRectangles) {
  for (std::uint32_t m = 2; m <= 24; m += 2) {
    for (std::uint32_t k = 1; k <= m / 2; ++k) {
      auto r = sample_disj1_rectangle(m, k, m * 31 + k);
      EXPECT_EQ(std::popcount(r.half_mask), static_cast<int>(m / 2));
      EXPECT_EQ(r.left_size, oracle::big_choose(m / 2, k));
      EXPECT_EQ(r.right_size, oracle::big_choose(m / 2, k));
      if (m > 14) continue;
      std::uint64_t left = 0, right = 0;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
        if (std::popcount(s) != static_cast<int>(k)) continue;
        left += r.left_contains(s);
        right += r.right_contains(s);
        EXPECT_FALSE(r.left_contains(s) && r.right_contains(s));
      }
      EXPECT_EQ(left, oracle::choose(m / 2, k));
      EXPECT_EQ(right, oracle::choose(m / 2, k));
    }
  }
  EXPECT_THROW(sample_disj1_rectangle(7, 2, 1), ValidationError);
}

TEST(Disj1, RegimeParameters) {
  EXPECT_EQ(disj1_regime_h(1u << 20), 3u);
  EXPECT_EQ(disj1_regime_t(1u << 20), 8u);
  EXPECT_EQ(disj1_regime_h(256), 1u);
  EXPECT_EQ(disj1_regime_h(257), 2u);
  EXPECT_EQ(disj1_regime_t(128), 2u);
  EXPECT_EQ(disj1_regime_t(129), 3u);
  auto r = sample_disj1_rectangle(64, 3, 1);
  EXPECT_TRUE(r.in_regime);
  EXPECT_FALSE(sample_disj1_rectangle(20, 3, 1).in_regime);
}

TEST(Disj1, FailureBound) {
  auto b = disj1_failure_bound(1u << 20, 20, 3, 8);
  EXPECT_DOUBLE_EQ(b.exp_term, std::exp(-1.0));
  EXPECT_EQ(b.distance_term, Rational(400 * 64, (1 << 20) - 20));
  auto far = disj1_failure_bound(1u << 20, 20, 3, 800);
  EXPECT_LT(far.exp_term, 1e-40);
}

TEST(Disj1, DistanceTermAgainstEnumeration) {
  // Pairs of independent 2-subsets of [20] that intersect.
  std::uint64_t hit = 0, total = 0;
  const auto sets = oracle::subsets(20, 2);
  for (const auto& a : sets)
    for (const auto& b : sets) {
      ++total;
      hit += oracle::meets(a, b);
    }
  EXPECT_EQ(Rational(BigInt(hit), BigInt(total)), Rational(37, 190));
  EXPECT_EQ(pairwise_intersection_probability(20, 2), Rational(37, 190));
  EXPECT_EQ(disj1_distance_exact(20, 2, 2), Rational(37, 190));
  EXPECT_LE(disj1_distance_exact(20, 2, 2), disj1_failure_bound(20, 2, 1, 2).distance_term);
}

TEST(Disj1, DistanceExactBelowBound) {
  for (std::uint64_t m = 10; m <= 60; m += 5)
    for (std::uint64_t k = 1; k <= 3; ++k)
      for (std::uint64_t t = 1; t * k <= m / 2; ++t)
        EXPECT_LE(disj1_distance_exact(m, k, t), disj1_failure_bound(m, k, 1, t).distance_term);
}

TEST(Disj0Coverage, SmallM) {
  for (std::uint32_t m = 2; m <= 12; ++m)
    for (std::uint32_t k = 1; k <= m; ++k) {
      if (100 * k >= 99 * m) continue;
      EXPECT_TRUE(disj0_coverage_holds(m, k)) << m << " " << k;
    }
}

TEST(Disj0Coverage, MatchesUnionEnumeration) {
  // Direct check: the largest family inside u elements has binom(u, k) sets.
  for (std::uint32_t m = 3; m <= 8; ++m) {
    for (std::uint32_t k = 1; k < m; ++k) {
      bool ok = true;
      const std::uint64_t threshold = oracle::choose(m, k);
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        const auto u = static_cast<std::uint32_t>(std::popcount(mask));
        if (100 * u < 99 * m && oracle::choose(u, k) >= threshold) ok = false;
      }
      EXPECT_EQ(disj0_coverage_holds(m, k), ok);
    }
  }
}
