#include "gadgetforge/disjointness.hpp"

#include "gadgetforge/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace gadgetforge {

HittingDistribution build_disj0_distribution(std::uint32_t m, std::uint32_t k) {
  if (k < 1 || 100 * std::uint64_t{k} >= 99 * std::uint64_t{m}) {
    throw ValidationError("disj0: need 1 <= k < 0.99m");
  }
  if (m > 64) throw ValidationError("disj0: m must be at most 64");
  if (binomial(m, k) > BigInt(1'000'000)) throw BudgetExceeded("disj0: binom(m, k) above 1e6");
  DisjGadget disj(m, k);
  std::vector<std::vector<std::uint32_t>> sides(m);
  for (std::uint64_t r = 0; r < disj.size(); ++r) {
    for (std::uint64_t s = disj.unrank(r); s != 0; s &= s - 1) {
      sides[static_cast<std::size_t>(std::countr_zero(s))].push_back(static_cast<std::uint32_t>(r));
    }
  }
  GadgetRef ref{disj.size(), disj.size(), 0};
  if (disj.size() <= PartialGadget::kMaxDenseSide) ref.hash = disj_gadget_matrix(disj).identity_hash();
  std::vector<std::pair<Rectangle, Rational>> support;
  for (auto& side : sides) support.emplace_back(Rectangle{side, side}, Rational(BigInt(1), BigInt(m)));
  auto dist = make_exact_distribution(std::move(support), 0, ref);
  dist.params = {{"m", std::to_string(m)}, {"k", std::to_string(k)}};
  return dist;
}

bool Disj1Rectangle::left_contains(std::uint64_t subset) const {
  return static_cast<std::uint32_t>(std::popcount(subset)) == k && (subset & ~half_mask) == 0;
}

bool Disj1Rectangle::right_contains(std::uint64_t subset) const {
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  return static_cast<std::uint32_t>(std::popcount(subset)) == k && (subset & ~(all & ~half_mask)) == 0;
}

unsigned disj1_regime_h(std::uint64_t m) {
  if (m == 0) throw ValidationError("m must be positive");
  unsigned h = 0;
  while (8 * h < 64 && (std::uint64_t{1} << (8 * h)) < m) ++h;
  return h;
}

unsigned disj1_regime_t(std::uint64_t m) {
  if (m == 0) throw ValidationError("m must be positive");
  unsigned t = 1;
  while (BigInt(t) * t * t * t * t * t * t < BigInt(m)) ++t;
  return t;
}

Disj1Rectangle sample_disj1_rectangle(std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
  if (m % 2 != 0) throw ValidationError("disj1: m must be even");
  if (m == 0 || m > 64) throw ValidationError("disj1: need 2 <= m <= 64");
  if (k > m / 2) throw ValidationError("disj1: need k <= m/2");
  Disj1Rectangle r;
  r.m = m;
  r.k = k;
  Rng rng(seed);
  for (auto i : rng.subset(m, m / 2)) r.half_mask |= std::uint64_t{1} << i;
  r.left_size = r.right_size = binomial(m / 2, k);
  r.h = disj1_regime_h(m);
  r.t = disj1_regime_t(m);
  r.in_regime = std::uint64_t{k} * k * k < m;
  if (!r.in_regime) r.warnings.push_back("k^3 >= m: outside the regime of the hitting argument");
  return r;
}

Disj1Bound disj1_failure_bound(std::uint64_t m, std::uint64_t k, unsigned h, std::uint64_t t) {
  if (m == 0 || k == 0 || t == 0) throw ValidationError("disj1 bound: parameters must be positive");
  if (k >= m) throw ValidationError("disj1 bound: need k < m");
  Disj1Bound b;
  b.exp_term = std::exp(-std::ldexp(static_cast<double>(t), -static_cast<int>(h)));
  b.distance_term = Rational(BigInt(k) * k * t * t, BigInt(m - k));
  b.miss_bound = b.exp_term + static_cast<double>(b.distance_term);
  return b;
}

Rational disj1_distance_exact(std::uint64_t m, std::uint64_t k, std::uint64_t t) {
  if (m == 0 || k == 0 || k > m) throw ValidationError("need 1 <= k <= m");
  const BigInt total = binomial(m, k);
  Rational disjoint = 1;
  for (std::uint64_t i = 1; i < t; ++i) {
    if (i * k > m) return Rational(1);
    disjoint *= Rational(binomial(m - i * k, k), total);
  }
  return 1 - disjoint;
}

Rational pairwise_intersection_probability(std::uint64_t m, std::uint64_t k) {
  return disj1_distance_exact(m, k, 2);
}

bool disj0_coverage_holds(std::uint32_t m, std::uint32_t k) {
  if (k < 1 || k > m) throw ValidationError("need 1 <= k <= m");
  const BigInt threshold_num = binomial(m, k);
  const unsigned shift = k / 100;
  // |X| >= binom(m,k) / 2^shift, i.e. 2^shift |X| >= binom(m,k).
  for (std::uint64_t u = 0; 100 * u < 99 * std::uint64_t{m}; ++u) {
    if (binomial(u, k) * pow2(shift) >= threshold_num) return false;
  }
  return true;
}

}  // namespace gadgetforge
