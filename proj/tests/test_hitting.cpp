#include "gadgetforge/errors.hpp"
#include "gadgetforge/hitting.hpp"
#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include <map>
#include <sstream>

using namespace gadgetforge;

namespace {

using Support = std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, Rational>;

// Enumerates (v, split) for v in the colour class with plain loops.
Support reference_support(std::uint32_t q, int b) {
  auto adj = oracle::ap_matrix(q);
  auto colour = oracle::sqr_coloring(q);
  const std::uint32_t m = q * q;
  std::vector<std::uint32_t> cls;
  for (std::uint32_t v = 0; v < m; ++v)
    if (colour[v] == b) cls.push_back(v);
  Support s;
  for (auto v : cls) {
    std::vector<std::uint32_t> nb;
    for (std::uint32_t u = 0; u < m; ++u)
      if (adj[v][u]) nb.push_back(u);
    for (std::uint32_t mask = 0; mask < (1u << nb.size()); ++mask) {
      std::vector<std::uint32_t> a, bb;
      for (std::size_t i = 0; i < nb.size(); ++i) (mask >> i & 1 ? bb : a).push_back(nb[i]);
      s[{a, bb}] += Rational(BigInt(1), BigInt(cls.size()) * BigInt(1u << nb.size()));
    }
  }
  return s;
}

Rational brute_min_hit(const HittingDistribution& d, std::uint32_t n, std::uint32_t t) {
  Rational best = 2;
  auto sets = oracle::subsets(n, t);
  for (const auto& x : sets) {
    for (const auto& y : sets) {
      Rational p = 0;
      for (const auto& [r, mu] : d.support)
        if (oracle::meets(r.left, x) && oracle::meets(r.right, y)) p += mu;
      best = std::min(best, p);
    }
  }
  return best;
}

// Chi-square p-value of `draws` samples against the exact support table.
double chi_square_p(const HittingDistribution& table, const HittingDistribution& sampler,
                    std::uint64_t draws, std::uint64_t seed) {
  std::map<Rectangle, std::size_t> index;
  for (std::size_t i = 0; i < table.support.size(); ++i) index[table.support[i].first] = i;
  std::vector<double> counts(table.support.size(), 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    Rng rng = Rng::derive(seed, i);
    auto it = index.find(sample_rectangle(sampler, rng));
    if (it == index.end()) return 0;  // outside the support
    ++counts[it->second];
  }
  double stat = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double e = static_cast<double>(table.support[i].second) * static_cast<double>(draws);
    stat += (counts[i] - e) * (counts[i] - e) / e;
  }
  boost::math::chi_squared_distribution<double> chi(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(chi, stat));
}

HittingDistribution ap_dist(std::uint32_t q, int b, ExpanderDistOptions opt = {}) {
  return build_expander_distribution(build_ap(q), build_sqr_coloring(q), b, opt);
}

}  // namespace

TEST(ExpanderDistribution, MatchesReferenceEnumeration) {
  for (std::uint32_t q : {3u, 5u}) {
    for (int b : {0, 1}) {
      auto d = ap_dist(q, b);
      ASSERT_TRUE(d.exact());
      auto ref = reference_support(q, b);
      ASSERT_EQ(d.support.size(), ref.size());
      for (const auto& [r, p] : d.support) EXPECT_EQ(p, (ref[{r.left, r.right}]));
      EXPECT_EQ(d.total_mass(), 1);
      EXPECT_EQ(*d.support_size, BigInt(d.support.size()));
    }
  }
}

TEST(ExpanderDistribution, ProbabilitiesAreMultiplesOfOneOverT8) {
  auto c = build_sqr_coloring(3);
  for (int b : {0, 1}) {
    auto d = ap_dist(3, b);
    const auto t = c.color_class(b).size();
    EXPECT_LE(d.support.size(), t * 8);
    for (const auto& [r, p] : d.support) EXPECT_EQ(denominator(p * static_cast<long>(t * 8)), 1);
  }
}

TEST(ExpanderDistribution, MonochromaticForSmallQ) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    auto pg = build_gadget_from_colored_graph(build_ap(q), build_sqr_coloring(q));
    for (int b : {0, 1}) EXPECT_TRUE(verify_monochromatic(ap_dist(q, b), pg).ok);
  }
}

TEST(ExpanderDistribution, Errors) {
  auto g = build_ap(3);
  EXPECT_THROW(build_expander_distribution(g, Coloring{std::vector<std::uint8_t>(9, 1)}, 0), ValidationError);
  RegularGraph c4({{1, 3}, {0, 2}, {1, 3}, {0, 2}});
  EXPECT_THROW(build_expander_distribution(c4, Coloring{{1, 1, 1, 1}}, 1), IllDefinedGadget);
}

TEST(ExpanderDistribution, UnbalancedColoringWarns) {
  auto g = build_ap(3);
  std::vector<std::uint8_t> bits(9, 0);
  bits[0] = 1;
  auto d = build_expander_distribution(g, Coloring{bits}, 1);
  EXPECT_FALSE(d.warnings.empty());
}

TEST(ExpanderDistribution, AllOneColoringPicksEveryVertex) {
  auto g = build_ap(3);
  auto d = build_expander_distribution(g, Coloring{std::vector<std::uint8_t>(9, 1)}, 1);
  // Every vertex contributes its all-to-A split with mass 1/(9*8).
  std::map<std::vector<std::uint32_t>, Rational> full_left;
  for (const auto& [r, p] : d.support)
    if (r.right.empty()) full_left[r.left] += p;
  Rational total = 0;
  for (const auto& [k, p] : full_left) total += p;
  EXPECT_EQ(total, Rational(1, 8));
}

TEST(ExpanderDistribution, SamplerMatchesTable) {
  auto table = ap_dist(3, 1);
  EXPECT_GT(chi_square_p(table, table, 100000, 11), 0.001);
  ExpanderDistOptions gen;
  gen.list_support = false;
  auto generative = ap_dist(3, 1, gen);
  EXPECT_FALSE(generative.exact());
  EXPECT_GT(chi_square_p(table, generative, 100000, 12), 0.001);
}

TEST(ExpanderDistribution, Poly10SamplerHasFullIndependentLaw) {
  // Neighbourhoods have 3 < 10 points, so 10-wise splits are uniform.
  ExpanderDistOptions opt;
  opt.mode = HashMode::Poly10Wise;
  auto poly = ap_dist(3, 0, opt);
  EXPECT_FALSE(poly.exact());
  auto table = ap_dist(3, 0);
  EXPECT_EQ(*poly.support_size, *table.support_size);
  EXPECT_GT(chi_square_p(table, poly, 50000, 13), 0.001);
}

TEST(ExpanderDistribution, Poly10ListingOnTinyGraph) {
  RegularGraph edge(std::vector<std::vector<Vertex>>{{1}, {0}});
  Coloring ones{{1, 1}};
  ExpanderDistOptions opt;
  opt.mode = HashMode::Poly10Wise;
  auto poly = build_expander_distribution(edge, ones, 1, opt);
  ASSERT_TRUE(poly.exact());
  auto full = build_expander_distribution(edge, ones, 1);
  ASSERT_EQ(poly.support.size(), full.support.size());
  for (std::size_t i = 0; i < poly.support.size(); ++i) EXPECT_EQ(poly.support[i], full.support[i]);
}

TEST(ExpanderDistribution, SamplesPartitionNeighbourhood) {
  ExpanderDistOptions gen;
  gen.list_support = false;
  auto g = build_ap(5);
  auto d = build_expander_distribution(g, build_sqr_coloring(5), 1, gen);
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto r = sample_rectangle(d, Rng::mix(i));
    std::vector<std::uint32_t> all = r.left;
    all.insert(all.end(), r.right.begin(), r.right.end());
    std::sort(all.begin(), all.end());
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
    bool is_hood = false;
    for (Vertex v = 0; v < 25 && !is_hood; ++v) {
      auto nb = g.neighbors(v);
      is_hood = std::vector<Vertex>(nb.begin(), nb.end()) == all;
    }
    EXPECT_TRUE(is_hood);
  }
}

TEST(HitExact, MatchesBruteForce) {
  for (int b : {0, 1}) {
    auto d = ap_dist(3, b);
    for (std::uint32_t t = 1; t <= 9; ++t) EXPECT_EQ(test_hitting_exact(d, t, t), brute_min_hit(d, 9, t)) << t;
  }
}

TEST(HitExact, FullSetsAndMonotone) {
  auto d = ap_dist(3, 0);
  Rational degenerate = 0;
  for (const auto& [r, p] : d.support)
    if (r.degenerate()) degenerate += p;
  EXPECT_EQ(test_hitting_exact(d, 9, 9), 1 - degenerate);
  Rational prev = 0;
  for (std::uint32_t t = 1; t <= 9; ++t) {
    auto p = test_hitting_exact(d, t, t);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(HitExact, SingleCell) {
  auto d = make_exact_distribution({{Rectangle{{0}, {0}}, Rational(1)}}, std::nullopt, GadgetRef{4, 4, 0});
  EXPECT_EQ(test_hitting_exact(d, 1, 1), 0);
  EXPECT_EQ(test_hitting_exact(d, 4, 4), 1);
}

TEST(HitExact, BudgetAndMode) {
  ExpanderDistOptions gen;
  gen.list_support = false;
  EXPECT_THROW(test_hitting_exact(ap_dist(3, 0, gen), 3, 3), UnsupportedError);
  EXPECT_THROW(test_hitting_exact(ap_dist(5, 0), 12, 12), BudgetExceeded);
}

TEST(HitMc, AlwaysHitCase) {
  auto d = ap_dist(3, 1);
  auto rep = test_hitting_mc(d, 9, 9, 20000, HitStrategy::RandomSets, 5);
  Rational degenerate = 0;
  for (const auto& [r, p] : d.support)
    if (r.degenerate()) degenerate += p;
  const double expect = 1 - static_cast<double>(degenerate);
  EXPECT_LE(rep.wilson_lo, expect);
  EXPECT_GE(rep.wilson_hi, expect);
  EXPECT_LE(rep.hits, rep.trials);
  EXPECT_THROW(test_hitting_mc(d, 3, 3, 0, HitStrategy::RandomSets, 1), ValidationError);
}

TEST(HitMc, SingleSlabMatchesExactAverage) {
  const std::uint32_t q = 5;
  auto d = ap_dist(q, 1);
  Rational avg = 0;
  for (std::uint32_t s = 0; s < q; ++s) {
    for (std::uint32_t t = 0; t < q; ++t) {
      std::vector<std::uint32_t> x, y;
      for (std::uint32_t j = 0; j < q; ++j) {
        x.push_back(s * q + j);
        y.push_back(t * q + j);
      }
      avg += hit_probability(d, x, y);
    }
  }
  avg /= q * q;
  auto rep = test_hitting_mc(d, 1, 1, 40000, HitStrategy::FirstCoordSlab, 9);
  const double p = static_cast<double>(avg);
  EXPECT_NEAR(rep.hit_rate, p, 5 * std::sqrt(p * (1 - p) / 40000) + 1e-9);
}

TEST(HitMc, NeighborhoodAvoidIsNoEasierThanRandom) {
  auto d = ap_dist(5, 0);
  auto rnd = test_hitting_mc(d, 6, 6, 20000, HitStrategy::RandomSets, 3);
  auto avoid = test_hitting_mc(d, 6, 6, 20000, HitStrategy::NeighborhoodAvoid, 3);
  EXPECT_LE(avoid.hit_rate, rnd.hit_rate + 0.02);
}

TEST(HitMc, IndependentOfWorkerCount) {
  auto d = ap_dist(5, 1);
  auto one = test_hitting_mc(d, 5, 5, 5000, HitStrategy::RandomSets, 77, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    auto many = test_hitting_mc(d, 5, 5, 5000, HitStrategy::RandomSets, 77, w);
    EXPECT_EQ(many.hits, one.hits);
  }
}

TEST(HitMc, StrategyNames) {
  for (auto s : {HitStrategy::RandomSets, HitStrategy::NeighborhoodAvoid, HitStrategy::FirstCoordSlab})
    EXPECT_EQ(parse_hit_strategy(to_string(s)), s);
  EXPECT_THROW(parse_hit_strategy("greedy"), ValidationError);
}

TEST(Wilson, KnownValues) {
  auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo, 0.4038, 1e-4);
  EXPECT_NEAR(hi, 0.5962, 1e-4);
  auto [lo0, hi0] = wilson_interval(0, 10);
  EXPECT_EQ(lo0, 0);
  EXPECT_NEAR(hi0, 0.2775, 1e-4);
}

TEST(Monochromatic, Violations) {
  auto pg = build_gadget_from_colored_graph(build_ap(3), build_sqr_coloring(3));
  // Rows 0 and 1 share x = 0, so (0, 1) is undefined.
  auto bad = make_exact_distribution({{Rectangle{{0}, {1}}, Rational(1)}}, 1, GadgetRef{9, 9, 0});
  auto rep = verify_monochromatic(bad, pg);
  ASSERT_FALSE(rep.ok);
  EXPECT_EQ(rep.cell->gadget_value, Trit::Undef);
  auto untagged = make_exact_distribution({{Rectangle{{0}, {1}}, Rational(1)}}, std::nullopt, GadgetRef{9, 9, 0});
  EXPECT_TRUE(verify_monochromatic(untagged, pg).ok);
}

TEST(ExactDistribution, Validation) {
  GadgetRef ref{4, 4, 0};
  EXPECT_THROW(make_exact_distribution({{Rectangle{{0}, {0}}, Rational(1, 2)}}, 0, ref), InvariantViolation);
  EXPECT_THROW(make_exact_distribution({{Rectangle{{5}, {0}}, Rational(1)}}, 0, ref), ValidationError);
  EXPECT_THROW(make_exact_distribution({{Rectangle{{1, 0}, {0}}, Rational(1)}}, 0, ref), ValidationError);
  EXPECT_THROW(make_exact_distribution({{Rectangle{{0}, {0}}, Rational(3, 2)}, {Rectangle{{1}, {0}}, Rational(-1, 2)}}, 0, ref),
               ValidationError);
}

TEST(Sparsify, UniformOnDraws) {
  auto d = ap_dist(3, 0);
  auto sp = sparsify(d, 8, 4);
  EXPECT_EQ(sp.total_mass(), 1);
  EXPECT_LE(sp.support.size(), 128u);
  for (const auto& [r, p] : sp.support) {
    EXPECT_EQ(denominator(p * 128), 1);
    EXPECT_TRUE(std::any_of(d.support.begin(), d.support.end(), [&](const auto& e) { return e.first == r; }));
  }
  EXPECT_THROW(sparsify(d, 0, 1), ValidationError);
}

TEST(SupportBound, Semantics) {
  auto d0 = ap_dist(3, 0), d1 = ap_dist(3, 1);
  EXPECT_TRUE(support_lower_bound_check(d0, d1, 0).ok);
  auto tiny = make_exact_distribution({{Rectangle{{0}, {1}}, Rational(1)}}, 1, d0.gadget);
  auto chk = support_lower_bound_check(d0, tiny, 1);
  EXPECT_FALSE(chk.ok);
  EXPECT_EQ(chk.violated_color, 1);
  EXPECT_TRUE(support_lower_bound_check(d0, tiny, 1, false).ok);
}

TEST(Adversarial, Preconditions) {
  std::vector<Trit> zeros(16, Trit::Zero);
  PartialGadget g(4, 4, zeros);
  auto full = make_exact_distribution({{Rectangle{{0, 1, 2, 3}, {0, 1, 2, 3}}, Rational(1)}}, 0, GadgetRef{4, 4, 0});
  EXPECT_THROW(adversarial_witness_search(g, full, 0, 10, 1), ValidationError);
  EXPECT_THROW(adversarial_witness_search(g, full, 3, 10, 1), ValidationError);
  auto rep = adversarial_witness_search(g, full, 1, 20, 1);
  EXPECT_EQ(rep.s, 2u);
  EXPECT_TRUE(rep.large_rectangle_present);
  EXPECT_EQ(rep.min_hit, 1);
  EXPECT_EQ(rep.ceiling, 2);
}

TEST(Adversarial, AverageMatchesClosedForm) {
  auto d = make_exact_distribution({{Rectangle{{0}, {1, 2, 3}}, Rational(1, 3)},
                                    {Rectangle{{2, 5}, {7}}, Rational(2, 3)}},
                                   0, GadgetRef{8, 8, 0});
  for (std::uint32_t s = 1; s <= 8; ++s) {
    const BigInt all = oracle::big_choose(8, s);
    auto side = [&](std::size_t size) { return 1 - Rational(oracle::big_choose(8 - size, s), all); };
    Rational want = Rational(1, 3) * side(1) * side(3) + Rational(2, 3) * side(2) * side(1);
    EXPECT_EQ(average_hit_probability_exact(d, 8, s), want);
  }
}

TEST(DistributionIo, RoundTrip) {
  auto d = sparsify(ap_dist(3, 1), 2, 3);
  std::stringstream ss;
  write_distribution(ss, d);
  auto back = read_distribution(ss);
  EXPECT_EQ(back.support, d.support);
  EXPECT_EQ(back.color, d.color);
  EXPECT_EQ(back.gadget, d.gadget);
  EXPECT_EQ(back.params, d.params);
  std::stringstream again;
  write_distribution(again, back);
  std::stringstream first;
  write_distribution(first, d);
  EXPECT_EQ(again.str(), first.str());
}

TEST(DistributionIo, SamplerOnlyHeader) {
  ExpanderDistOptions gen;
  gen.list_support = false;
  auto d = ap_dist(3, 0, gen);
  std::stringstream ss;
  write_distribution(ss, d);
  auto back = read_distribution(ss);
  EXPECT_FALSE(back.exact());
  EXPECT_EQ(back.support_size, d.support_size);
  EXPECT_THROW(sample_rectangle(back, 1), UnsupportedError);
}
