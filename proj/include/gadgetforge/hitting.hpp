#pragma once

#include "gadgetforge/algebra.hpp"
#include "gadgetforge/gadgets.hpp"
#include "gadgetforge/graphs.hpp"
#include "gadgetforge/rng.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gadgetforge {

// U x V with both sides given as sorted index lists; either side may be empty.
struct Rectangle {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;

  bool degenerate() const { return left.empty() || right.empty(); }
  auto operator<=>(const Rectangle&) const = default;
};

enum class DistMode { Exact, SamplerOnly };
enum class HashMode { FullIndep, Poly10Wise };

struct GadgetRef {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::uint64_t hash = 0;  // 0 when the gadget was too large to hash densely

  friend bool operator==(const GadgetRef&, const GadgetRef&) = default;
};

class RectangleSource {
 public:
  virtual ~RectangleSource() = default;
  virtual Rectangle draw(Rng& rng) const = 0;
};

struct HittingDistribution {
  std::vector<std::pair<Rectangle, Rational>> support;  // sorted by rectangle, Exact mode only
  std::optional<int> color;
  GadgetRef gadget;
  DistMode mode = DistMode::Exact;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> warnings;
  // Number of distinct support rectangles when known without listing.
  std::optional<BigInt> support_size;
  std::shared_ptr<const RectangleSource> sampler;

  bool exact() const { return mode == DistMode::Exact; }
  Rational total_mass() const;
};

// Exact-mode distribution from an explicit support; builds a sampler over it.
HittingDistribution make_exact_distribution(std::vector<std::pair<Rectangle, Rational>> support,
                                            std::optional<int> color, GadgetRef gadget);

struct ExpanderDistOptions {
  HashMode mode = HashMode::FullIndep;
  bool list_support = true;
  std::uint64_t max_support = std::uint64_t{1} << 20;  // (v, split) pairs enumerated
};

// Picks v uniformly from c^{-1}(b) and splits Γ(v) into A (hash 0) and B (hash 1).
// FullIndep uses independent fair bits per neighbour; Poly10Wise uses the
// 10-wise polynomial hash on ceil(log2 m)-bit vertex indices. The support is
// listed exactly when the enumeration fits the options, else SamplerOnly.
HittingDistribution build_expander_distribution(const RegularGraph& g, const Coloring& c, int b,
                                                const ExpanderDistOptions& options = {});

Rectangle sample_rectangle(const HittingDistribution& dist, Rng& rng);
Rectangle sample_rectangle(const HittingDistribution& dist, std::uint64_t seed);

// Pr_{R ~ dist}[R ∩ X×Y ≠ ∅] for fixed sorted X, Y.
Rational hit_probability(const HittingDistribution& dist, const std::vector<std::uint32_t>& x,
                         const std::vector<std::uint32_t>& y);

// Exact min over |X| = t_left, |Y| = t_right of the hit probability.
Rational test_hitting_exact(const HittingDistribution& dist, std::uint32_t t_left,
                            std::uint32_t t_right);

enum class HitStrategy { RandomSets, NeighborhoodAvoid, FirstCoordSlab };

std::string to_string(HitStrategy s);
HitStrategy parse_hit_strategy(const std::string& s);

struct HitReport {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double hit_rate = 0;
  double estimated_delta = 0;  // 1 - hit_rate
  double wilson_lo = 0;        // 95% Wilson interval for hit_rate
  double wilson_hi = 0;
  HitStrategy strategy = HitStrategy::RandomSets;
  std::uint32_t t_left = 0;
  std::uint32_t t_right = 0;
};

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054);

// Per trial i, stream (seed, i) draws (X, Y) by the strategy and then R ~ dist.
// FirstCoordSlab needs square sides q^2 and takes X = {(x, y) : x ∈ S} with
// |S| = ceil(t/q), so |X| may round up to a multiple of q.
HitReport test_hitting_mc(const HittingDistribution& dist, std::uint32_t t_left,
                          std::uint32_t t_right, std::uint64_t trials, HitStrategy strategy,
                          std::uint64_t seed, unsigned workers = 0);

// Monte-Carlo δ(h) curve with t = ceil(side * 2^-h) on each side.
std::vector<HitReport> hitting_curve(const HittingDistribution& dist, const std::vector<int>& hs,
                                     std::uint64_t trials, HitStrategy strategy, std::uint64_t seed,
                                     unsigned workers = 0);

struct MonochromaticReport {
  bool ok = true;
  std::optional<std::size_t> rectangle_index;
  std::optional<CellWitness> cell;
};

MonochromaticReport verify_monochromatic(const HittingDistribution& dist, const PartialGadget& gadget);

// Uniform distribution on c * 2^k independent draws, k = ceil(log2 max side).
HittingDistribution sparsify(const HittingDistribution& dist, std::uint64_t c, std::uint64_t seed);

struct SupportCheck {
  bool ok = true;
  std::optional<int> violated_color;
};

// If both distributions are claimed (δ, h)-hitting with δ < 1, each support
// must have at least 2^h rectangles.
SupportCheck support_lower_bound_check(const HittingDistribution& dist0,
                                       const HittingDistribution& dist1, int h,
                                       bool claimed_hitting = true);

struct AdversarialReport {
  std::uint64_t s = 0;
  Rational ceiling;  // 2^{k - 2h + 1}
  Rational min_hit;
  double mean_hit = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint32_t> best_x;
  std::vector<std::uint32_t> best_y;
  // Some support rectangle has both sides >= s (first case of the argument).
  bool large_rectangle_present = false;
};

// Random s-subsets X, Y with s = 2^{k-h} against a 0-monochromatic exact
// distribution on a 2^k x 2^k gadget.
AdversarialReport adversarial_witness_search(const PartialGadget& gadget,
                                             const HittingDistribution& dist, int h,
                                             std::uint64_t trials, std::uint64_t seed);

// Average hit probability over all pairs of s-subsets of a side-n domain,
// enumerating every s-subset once per side (the pair average factorises).
Rational average_hit_probability_exact(const HittingDistribution& dist, std::uint32_t n,
                                       std::uint32_t s);

// Line format: header lines, then "left | right | num/den" per rectangle.
void write_distribution(std::ostream& out, const HittingDistribution& dist);
HittingDistribution read_distribution(std::istream& in);

}  // namespace gadgetforge
