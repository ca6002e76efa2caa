#include "gadgetforge/bounds.hpp"
#include "gadgetforge/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gadgetforge;

TEST(Theorem2H, Examples) {
  EXPECT_EQ(theorem2_h(std::ldexp(1.0, -60)), 20);
  EXPECT_EQ(theorem2_h(std::ldexp(1.0, -55)), 10);
  EXPECT_EQ(theorem2_h(1 / std::sqrt(3.0)), -99);
  EXPECT_THROW(theorem2_h(0), ValidationError);
  EXPECT_THROW(theorem2_h(1), ValidationError);
}

TEST(SimulationBound, Examples) {
  EXPECT_EQ(simulation_bound(60, pow2(54), Rational(1, 10)), Rational(3, 2));
  EXPECT_FALSE(simulation_bound(10, pow2(6), Rational(1, 2)).has_value());
  EXPECT_FALSE(simulation_bound(60, pow2(54) + 1, Rational(1, 10)).has_value());
  EXPECT_THROW(simulation_bound(0, 4, Rational(1, 2)), ValidationError);
  EXPECT_THROW(simulation_bound(10, 0, Rational(1, 2)), ValidationError);
}

TEST(SimulationBound, FractionalExponent) {
  // h (1 - eps) = 20 * 2/3 = 40/3; 2^13 <= 2^{13.33} < 2^14.
  EXPECT_TRUE(simulation_bound(20, pow2(13), Rational(1, 3)).has_value());
  EXPECT_FALSE(simulation_bound(20, pow2(14), Rational(1, 3)).has_value());
}

TEST(Corollary1, Examples) {
  EXPECT_EQ(corollary1_bound(Rational(300), Rational(50)), Rational(25, 2));
  EXPECT_EQ(corollary1_bound(Rational(250), Rational(50)), Rational(0));
  EXPECT_FALSE(corollary1_bound(Rational(249), Rational(50)).has_value());
}
