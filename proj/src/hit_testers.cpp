#include "gadgetforge/errors.hpp"
#include "gadgetforge/hitting.hpp"
#include "gadgetforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>

namespace gadgetforge {

namespace {

constexpr std::uint64_t kExactPairBudget = 100'000'000;
constexpr std::size_t kExactSupportBudget = 10'000;
constexpr std::uint64_t kSubsetBudget = 1'000'000;
constexpr std::uint64_t kPilotDraws = 4096;

void require_exact(const HittingDistribution& dist, const char* what) {
  if (!dist.exact()) throw UnsupportedError(std::string(what) + " needs an exact (listed) distribution");
}

bool meets(const std::vector<std::uint32_t>& side, const std::vector<std::uint8_t>& member) {
  return std::any_of(side.begin(), side.end(), [&](std::uint32_t i) { return member[i] != 0; });
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// For each t-subset of [n] in lexicographic order, the bitset of support
// rectangles whose side (selected by `pick`) meets it.
template <class Pick>
std::vector<std::uint64_t> subset_hit_sets(const HittingDistribution& dist, std::uint32_t n,
                                           std::uint32_t t, Pick pick, std::size_t words) {
  std::vector<std::vector<std::uint64_t>> by_index(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < dist.support.size(); ++r) {
    for (std::uint32_t i : pick(dist.support[r].first)) by_index[i][r / 64] |= std::uint64_t{1} << (r % 64);
  }
  std::vector<std::uint64_t> out;
  std::vector<std::uint32_t> c(t);
  for (std::uint32_t i = 0; i < t; ++i) c[i] = i;
  do {
    std::size_t base = out.size();
    out.resize(base + words, 0);
    for (std::uint32_t i : c) {
      for (std::size_t w = 0; w < words; ++w) out[base + w] |= by_index[i][w];
    }
  } while (t > 0 && next_combination(c, n));
  return out;
}

template <class Weight>
Weight min_hit_weight(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys,
                      const std::vector<Weight>& weights, std::size_t words, Weight start) {
  Weight best = start;
  std::vector<std::uint64_t> both(words);
  for (std::size_t xi = 0; xi < xs.size(); xi += words) {
    for (std::size_t yi = 0; yi < ys.size(); yi += words) {
      Weight mass = 0;
      for (std::size_t w = 0; w < words; ++w) {
        for (std::uint64_t bits = xs[xi + w] & ys[yi + w]; bits != 0; bits &= bits - 1) {
          mass += weights[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
        }
      }
      if (mass < best) best = mass;
    }
  }
  return best;
}

std::uint32_t exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw UnsupportedError("FIRST_COORD_SLAB needs square sides q^2");
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Rational hit_probability(const HittingDistribution& dist, const std::vector<std::uint32_t>& x,
                         const std::vector<std::uint32_t>& y) {
  require_exact(dist, "hit_probability");
  std::vector<std::uint8_t> in_x(dist.gadget.rows, 0), in_y(dist.gadget.cols, 0);
  for (auto i : x) {
    if (i >= dist.gadget.rows) throw DimensionError("X index outside gadget rows");
    in_x[i] = 1;
  }
  for (auto i : y) {
    if (i >= dist.gadget.cols) throw DimensionError("Y index outside gadget columns");
    in_y[i] = 1;
  }
  Rational p = 0;
  for (const auto& [rect, mu] : dist.support) {
    if (meets(rect.left, in_x) && meets(rect.right, in_y)) p += mu;
  }
  return p;
}

Rational test_hitting_exact(const HittingDistribution& dist, std::uint32_t t_left,
                            std::uint32_t t_right) {
  require_exact(dist, "test_hitting_exact");
  const auto rows = dist.gadget.rows, cols = dist.gadget.cols;
  if (t_left > rows || t_right > cols) throw ValidationError("set size exceeds gadget side");
  if (binomial(rows, t_left) * binomial(cols, t_right) > BigInt(kExactPairBudget)) {
    throw BudgetExceeded("test_hitting_exact: more than 1e8 (X, Y) pairs; use test_hitting_mc");
  }
  if (dist.support.size() > kExactSupportBudget) {
    throw BudgetExceeded("test_hitting_exact: support above 1e4 rectangles; use test_hitting_mc");
  }
  if (t_left == 0 || t_right == 0 || dist.support.empty()) return Rational(0);

  const std::size_t words = (dist.support.size() + 63) / 64;
  auto xs = subset_hit_sets(dist, static_cast<std::uint32_t>(rows), t_left,
                            [](const Rectangle& r) -> const auto& { return r.left; }, words);
  auto ys = subset_hit_sets(dist, static_cast<std::uint32_t>(cols), t_right,
                            [](const Rectangle& r) -> const auto& { return r.right; }, words);

  BigInt den = 1;
  for (const auto& entry : dist.support) den = boost::multiprecision::lcm(den, denominator(entry.second));
  std::vector<BigInt> big(words * 64, 0);
  for (std::size_t r = 0; r < dist.support.size(); ++r) {
    const auto& p = dist.support[r].second;
    big[r] = numerator(p) * (den / denominator(p));
  }
  if (den < BigInt(std::uint64_t{1} << 62)) {
    std::vector<std::uint64_t> w(big.size());
    for (std::size_t i = 0; i < big.size(); ++i) w[i] = static_cast<std::uint64_t>(big[i]);
    auto best = min_hit_weight<std::uint64_t>(xs, ys, w, words, static_cast<std::uint64_t>(den));
    return Rational(BigInt(best), den);
  }
  return Rational(min_hit_weight<BigInt>(xs, ys, big, words, den), den);
}

std::string to_string(HitStrategy s) {
  switch (s) {
    case HitStrategy::RandomSets:
      return "random-sets";
    case HitStrategy::NeighborhoodAvoid:
      return "neighborhood-avoid";
    case HitStrategy::FirstCoordSlab:
      return "first-coord-slab";
  }
  return "?";
}

HitStrategy parse_hit_strategy(const std::string& s) {
  for (auto v : {HitStrategy::RandomSets, HitStrategy::NeighborhoodAvoid, HitStrategy::FirstCoordSlab}) {
    if (to_string(v) == s) return v;
  }
  throw ValidationError("unknown hit strategy '" + s + "'");
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

HitReport test_hitting_mc(const HittingDistribution& dist, std::uint32_t t_left,
                          std::uint32_t t_right, std::uint64_t trials, HitStrategy strategy,
                          std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw ValidationError("test_hitting_mc: trials must be >= 1");
  if (!dist.sampler) throw UnsupportedError("test_hitting_mc: distribution has no sampler");
  const auto rows = static_cast<std::uint32_t>(dist.gadget.rows);
  const auto cols = static_cast<std::uint32_t>(dist.gadget.cols);
  if (t_left > rows || t_right > cols) throw ValidationError("set size exceeds gadget side");

  // NEIGHBORHOOD_AVOID: fill X and Y with the rows/columns least covered by
  // the distribution. Coverage is exact when listed, estimated otherwise.
  std::vector<double> cover_left, cover_right;
  if (strategy == HitStrategy::NeighborhoodAvoid) {
    cover_left.assign(rows, 0.0);
    cover_right.assign(cols, 0.0);
    auto add = [&](const Rectangle& r, double w) {
      for (auto i : r.left) cover_left[i] += w;
      for (auto i : r.right) cover_right[i] += w;
    };
    if (dist.exact()) {
      for (const auto& [rect, p] : dist.support) add(rect, static_cast<double>(p));
    } else {
      const std::uint64_t pilot_seed = Rng::mix(seed ^ 0x706c6f74ull);
      for (std::uint64_t i = 0; i < kPilotDraws; ++i) {
        Rng rng = Rng::derive(pilot_seed, i);
        add(dist.sampler->draw(rng), 1.0);
      }
    }
  }
  std::uint32_t q_left = 0, q_right = 0;
  if (strategy == HitStrategy::FirstCoordSlab) {
    q_left = exact_sqrt(rows);
    q_right = exact_sqrt(cols);
  }

  auto choose = [&](Rng& rng, std::uint32_t n, std::uint32_t t, const std::vector<double>& cover,
                    std::uint32_t q, std::vector<std::uint8_t>& member) {
    std::fill(member.begin(), member.end(), 0);
    switch (strategy) {
      case HitStrategy::RandomSets:
        for (auto i : rng.subset(n, t)) member[i] = 1;
        break;
      case HitStrategy::NeighborhoodAvoid: {
        auto order = rng.permutation(n);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return cover[a] < cover[b]; });
        for (std::uint32_t i = 0; i < t; ++i) member[order[i]] = 1;
        break;
      }
      case HitStrategy::FirstCoordSlab: {
        const std::uint32_t slabs = (t + q - 1) / q;
        for (auto x : rng.subset(q, slabs)) {
          for (std::uint32_t y = 0; y < q; ++y) member[x * q + y] = 1;
        }
        break;
      }
    }
  };

  std::atomic<std::uint64_t> hits{0};
  parallel_for(
      trials,
      [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint8_t> in_x(rows), in_y(cols);
        std::uint64_t local = 0;
        for (std::size_t i = begin; i < end; ++i) {
          Rng rng = Rng::derive(seed, i);
          choose(rng, rows, t_left, cover_left, q_left, in_x);
          choose(rng, cols, t_right, cover_right, q_right, in_y);
          Rectangle r = dist.sampler->draw(rng);
          if (meets(r.left, in_x) && meets(r.right, in_y)) ++local;
        }
        hits += local;
      },
      workers);

  HitReport report;
  report.trials = trials;
  report.hits = hits.load();
  report.hit_rate = static_cast<double>(report.hits) / static_cast<double>(trials);
  report.estimated_delta = 1.0 - report.hit_rate;
  std::tie(report.wilson_lo, report.wilson_hi) = wilson_interval(report.hits, trials);
  report.strategy = strategy;
  report.t_left = t_left;
  report.t_right = t_right;
  return report;
}

std::vector<HitReport> hitting_curve(const HittingDistribution& dist, const std::vector<int>& hs,
                                     std::uint64_t trials, HitStrategy strategy, std::uint64_t seed,
                                     unsigned workers) {
  std::vector<HitReport> out;
  for (int h : hs) {
    if (h < 0 || h > 63) throw ValidationError("hitting_curve: h must lie in [0, 63]");
    auto t_of = [h](std::uint64_t side) {
      return static_cast<std::uint32_t>((side + (std::uint64_t{1} << h) - 1) >> h);
    };
    out.push_back(test_hitting_mc(dist, t_of(dist.gadget.rows), t_of(dist.gadget.cols), trials,
                                  strategy, Rng::mix(seed + static_cast<std::uint64_t>(h)), workers));
  }
  return out;
}

MonochromaticReport verify_monochromatic(const HittingDistribution& dist, const PartialGadget& gadget) {
  MonochromaticReport report;
  if (!dist.color) return report;
  require_exact(dist, "verify_monochromatic");
  if (gadget.rows() != dist.gadget.rows || gadget.cols() != dist.gadget.cols) {
    throw DimensionError("distribution and gadget dimensions differ");
  }
  const Trit want = *dist.color ? Trit::One : Trit::Zero;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto& rect = dist.support[i].first;
    if (rect.degenerate()) continue;
    for (auto u : rect.left) {
      for (auto v : rect.right) {
        Trit t = gadget.at(u, v);
        if (t != want) {
          report.ok = false;
          report.rectangle_index = i;
          report.cell = CellWitness{u, v, t, *dist.color};
          return report;
        }
      }
    }
  }
  return report;
}

SupportCheck support_lower_bound_check(const HittingDistribution& dist0,
                                       const HittingDistribution& dist1, int h,
                                       bool claimed_hitting) {
  if (h < 0) throw ValidationError("support_lower_bound_check: h must be >= 0");
  if (dist0.gadget != dist1.gadget) throw DimensionError("distributions target different gadgets");
  SupportCheck check;
  if (!claimed_hitting) return check;
  const BigInt need = pow2(static_cast<unsigned>(h));
  for (const auto* d : {&dist0, &dist1}) {
    if (!d->support_size) throw UnsupportedError("support size unknown for a sampler-only distribution");
    if (*d->support_size < need) {
      check.ok = false;
      check.violated_color = d->color ? *d->color : (d == &dist0 ? 0 : 1);
      return check;
    }
  }
  return check;
}

AdversarialReport adversarial_witness_search(const PartialGadget& gadget,
                                             const HittingDistribution& dist, int h,
                                             std::uint64_t trials, std::uint64_t seed) {
  require_exact(dist, "adversarial_witness_search");
  const std::uint64_t side = gadget.rows();
  if (gadget.cols() != side || !std::has_single_bit(side)) {
    throw ValidationError("adversarial search needs a square 2^k x 2^k gadget");
  }
  const int k = std::countr_zero(side);
  if (h < 1 || h > k) throw ValidationError("adversarial search needs 1 <= h <= k so that s = 2^{k-h} <= 2^{k-1}");
  if (dist.color != 0) throw ValidationError("adversarial search expects a colour-0 distribution");
  if (auto mono = verify_monochromatic(dist, gadget); !mono.ok) {
    throw ValidationError("distribution is not 0-monochromatic on the gadget");
  }
  if (trials == 0) throw ValidationError("trials must be >= 1");

  AdversarialReport report;
  report.s = std::uint64_t{1} << (k - h);
  const int e = k - 2 * h + 1;
  report.ceiling = e >= 0 ? Rational(pow2(static_cast<unsigned>(e))) : Rational(BigInt(1), pow2(static_cast<unsigned>(-e)));
  report.trials = trials;
  for (const auto& [rect, p] : dist.support) {
    if (rect.left.size() >= report.s && rect.right.size() >= report.s) report.large_rectangle_present = true;
  }
  double sum = 0;
  bool first = true;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::derive(seed, i);
    auto x = rng.subset(static_cast<std::uint32_t>(side), static_cast<std::uint32_t>(report.s));
    auto y = rng.subset(static_cast<std::uint32_t>(side), static_cast<std::uint32_t>(report.s));
    Rational p = hit_probability(dist, x, y);
    sum += static_cast<double>(p);
    if (first || p < report.min_hit) {
      report.min_hit = p;
      report.best_x = std::move(x);
      report.best_y = std::move(y);
      first = false;
    }
  }
  report.mean_hit = sum / static_cast<double>(trials);
  return report;
}

Rational average_hit_probability_exact(const HittingDistribution& dist, std::uint32_t n,
                                       std::uint32_t s) {
  require_exact(dist, "average_hit_probability_exact");
  if (n == 0 || n > 64) throw ValidationError("average_hit_probability_exact: need 1 <= n <= 64");
  if (s > n) throw ValidationError("average_hit_probability_exact: s > n");
  const BigInt subsets = binomial(n, s);
  if (subsets > BigInt(kSubsetBudget)) throw BudgetExceeded("more than 1e6 s-subsets");
  if (s == 0) return Rational(0);

  auto to_mask = [n](const std::vector<std::uint32_t>& v) {
    std::uint64_t m = 0;
    for (auto i : v) {
      if (i >= n) throw DimensionError("rectangle index outside the side-n domain");
      m |= std::uint64_t{1} << i;
    }
    return m;
  };
  std::vector<std::uint64_t> left, right;
  for (const auto& [rect, p] : dist.support) {
    left.push_back(to_mask(rect.left));
    right.push_back(to_mask(rect.right));
  }
  std::vector<std::uint64_t> hit_left(left.size(), 0), hit_right(right.size(), 0);
  std::vector<std::uint32_t> c(s);
  for (std::uint32_t i = 0; i < s; ++i) c[i] = i;
  do {
    std::uint64_t x = 0;
    for (auto i : c) x |= std::uint64_t{1} << i;
    for (std::size_t r = 0; r < left.size(); ++r) {
      hit_left[r] += (left[r] & x) != 0;
      hit_right[r] += (right[r] & x) != 0;
    }
  } while (next_combination(c, n));

  Rational avg = 0;
  for (std::size_t r = 0; r < left.size(); ++r) {
    avg += dist.support[r].second * Rational(BigInt(hit_left[r]) * hit_right[r], subsets * subsets);
  }
  return avg;
}

}  // namespace gadgetforge
