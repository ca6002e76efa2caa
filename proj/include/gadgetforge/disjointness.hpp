#pragma once

#include "gadgetforge/algebra.hpp"
#include "gadgetforge/hitting.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gadgetforge {

// Support {U_I x U_I : I in [m]} with U_I = {k-sets containing I}, each with
// probability 1/m; indices are colex ranks. Colour 0.
HittingDistribution build_disj0_distribution(std::uint32_t m, std::uint32_t k);

// U_A x V_A for a uniform m/2-subset A: U_A = k-subsets of A, V_A = k-subsets
// of the complement. Kept implicit; sides have binom(m/2, k) elements.
struct Disj1Rectangle {
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::uint64_t half_mask = 0;  // A as a bitmask over [m]
  BigInt left_size;
  BigInt right_size;
  unsigned h = 0;  // ceil(log2(m) / 8)
  unsigned t = 0;  // ceil(m^(1/7))
  bool in_regime = false;  // k^3 < m
  std::vector<std::string> warnings;

  bool left_contains(std::uint64_t subset) const;
  bool right_contains(std::uint64_t subset) const;
};

unsigned disj1_regime_h(std::uint64_t m);
unsigned disj1_regime_t(std::uint64_t m);

Disj1Rectangle sample_disj1_rectangle(std::uint32_t m, std::uint32_t k, std::uint64_t seed);

struct Disj1Bound {
  double exp_term = 0;      // exp(-2^-h * t)
  Rational distance_term;   // k^2 t^2 / (m - k)
  double miss_bound = 0;    // exp_term + distance_term
};

Disj1Bound disj1_failure_bound(std::uint64_t m, std::uint64_t k, unsigned h, std::uint64_t t);

// Probability that t independent uniform k-subsets of [m] are not pairwise
// disjoint: 1 - prod_{i<t} binom(m - ik, k) / binom(m, k).
Rational disj1_distance_exact(std::uint64_t m, std::uint64_t k, std::uint64_t t);

// Pr that two independent uniform k-subsets intersect.
Rational pairwise_intersection_probability(std::uint64_t m, std::uint64_t k);

// Every family X of k-subsets with |X| >= binom(m,k) 2^-floor(k/100) has a
// union of at least 0.99m elements. A union of u elements holds at most
// binom(u, k) sets, so this checks binom(u, k) below the threshold for u < 0.99m.
bool disj0_coverage_holds(std::uint32_t m, std::uint32_t k);

}  // namespace gadgetforge
