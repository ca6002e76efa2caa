#include "gadgetforge/hitting.hpp"

#include "gadgetforge/errors.hpp"
#include "gadgetforge/hashing.hpp"
#include "gadgetforge/textio.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace gadgetforge {

namespace {

// Samples from an explicit support. Integer cumulative weights over the
// common denominator keep the law exact whenever the denominator fits 63 bits.
class SupportSource final : public RectangleSource {
 public:
  explicit SupportSource(const std::vector<std::pair<Rectangle, Rational>>& support) {
    rects_.reserve(support.size());
    BigInt lcm_den = 1;
    for (const auto& [rect, p] : support) {
      rects_.push_back(rect);
      lcm_den = boost::multiprecision::lcm(lcm_den, denominator(p));
    }
    if (lcm_den <= BigInt(std::uint64_t{1} << 62)) {
      std::uint64_t acc = 0;
      for (const auto& [rect, p] : support) {
        BigInt w = numerator(p) * (lcm_den / denominator(p));
        acc += static_cast<std::uint64_t>(w);
        cum_int_.push_back(acc);
      }
    } else {
      double acc = 0;
      for (const auto& [rect, p] : support) {
        acc += static_cast<double>(p);
        cum_real_.push_back(acc);
      }
    }
  }

  Rectangle draw(Rng& rng) const override {
    if (rects_.empty()) throw ValidationError("cannot sample from an empty support");
    std::size_t idx;
    if (!cum_int_.empty()) {
      std::uint64_t r = rng.below(cum_int_.back());
      idx = static_cast<std::size_t>(std::upper_bound(cum_int_.begin(), cum_int_.end(), r) -
                                     cum_int_.begin());
    } else {
      double r = rng.uniform01() * cum_real_.back();
      idx = static_cast<std::size_t>(std::upper_bound(cum_real_.begin(), cum_real_.end(), r) -
                                     cum_real_.begin());
      idx = std::min(idx, rects_.size() - 1);
    }
    return rects_[idx];
  }

 private:
  std::vector<Rectangle> rects_;
  std::vector<std::uint64_t> cum_int_;
  std::vector<double> cum_real_;
};

// Replays the generating process: v uniform in the colour class, then a split.
class ExpanderSource final : public RectangleSource {
 public:
  ExpanderSource(std::vector<std::vector<Vertex>> hoods, HashMode mode, unsigned hash_bits)
      : hoods_(std::move(hoods)), mode_(mode), hash_bits_(hash_bits) {}

  Rectangle draw(Rng& rng) const override {
    const auto& nb = hoods_[rng.below(hoods_.size())];
    Rectangle r;
    if (mode_ == HashMode::FullIndep) {
      std::uint64_t word = 0;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (i % 64 == 0) word = rng();
        ((word >> (i % 64)) & 1 ? r.right : r.left).push_back(nb[i]);
      }
    } else {
      HashFamily fam(hash_bits_, 10);
      HashSeed seed;
      for (unsigned i = 0; i < fam.k; ++i) {
        seed.coeffs.push_back(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << fam.n)));
      }
      for (Vertex u : nb) (hash_eval(fam, seed, u) ? r.right : r.left).push_back(u);
    }
    return r;
  }

 private:
  std::vector<std::vector<Vertex>> hoods_;
  HashMode mode_;
  unsigned hash_bits_;
};

unsigned ceil_log2(std::uint64_t m) {
  return m <= 1 ? 0u : static_cast<unsigned>(std::bit_width(m - 1));
}

}  // namespace

Rational HittingDistribution::total_mass() const {
  Rational total = 0;
  for (const auto& entry : support) total += entry.second;
  return total;
}

HittingDistribution make_exact_distribution(std::vector<std::pair<Rectangle, Rational>> support,
                                            std::optional<int> color, GadgetRef gadget) {
  std::sort(support.begin(), support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& [rect, p] = support[i];
    if (p <= 0) throw ValidationError("support probabilities must be positive");
    if (i > 0 && support[i - 1].first == rect) throw ValidationError("duplicate support rectangle");
    for (const auto* side : {&rect.left, &rect.right}) {
      if (!std::is_sorted(side->begin(), side->end()) ||
          std::adjacent_find(side->begin(), side->end()) != side->end()) {
        throw ValidationError("rectangle sides must be sorted and duplicate-free");
      }
    }
    if ((!rect.left.empty() && rect.left.back() >= gadget.rows) ||
        (!rect.right.empty() && rect.right.back() >= gadget.cols)) {
      throw ValidationError("rectangle index outside gadget dimensions");
    }
  }
  HittingDistribution dist;
  dist.color = color;
  dist.gadget = gadget;
  dist.mode = DistMode::Exact;
  dist.support = std::move(support);
  dist.support_size = BigInt(dist.support.size());
  if (dist.total_mass() != 1) throw InvariantViolation("support probabilities do not sum to 1");
  dist.sampler = std::make_shared<SupportSource>(dist.support);
  return dist;
}

HittingDistribution build_expander_distribution(const RegularGraph& g, const Coloring& c, int b,
                                                const ExpanderDistOptions& options) {
  if (b != 0 && b != 1) throw ValidationError("colour must be 0 or 1");
  const std::uint32_t m = g.vertex_count();
  if (c.size() != m) throw DimensionError("coloring length != vertex count");
  if (auto mc = max_common_neighbors(g); mc > 1) {
    throw IllDefinedGadget("graph has two vertices with " + std::to_string(mc) +
                           " common neighbours");
  }
  const auto cls = c.color_class(b);
  if (cls.empty()) throw ValidationError("colour class c^{-1}(" + std::to_string(b) + ") is empty");

  GadgetRef ref{m, m, 0};
  if (m <= PartialGadget::kMaxDenseSide) {
    ref.hash = build_gadget_from_colored_graph(g, c).identity_hash();
  }
  const unsigned d = g.degree();
  const unsigned hash_bits = std::max(1u, ceil_log2(m));
  if (options.mode == HashMode::Poly10Wise && hash_bits > 16) {
    throw UnsupportedError("Poly10Wise hashing supports at most 2^16 vertices");
  }

  std::vector<std::vector<Vertex>> hoods;
  hoods.reserve(cls.size());
  for (Vertex v : cls) {
    auto nb = g.neighbors(v);
    hoods.emplace_back(nb.begin(), nb.end());
  }
  std::set<std::vector<Vertex>> distinct_hoods(hoods.begin(), hoods.end());

  HittingDistribution dist;
  dist.color = b;
  dist.gadget = ref;
  dist.params = {{"graph_m", std::to_string(m)},
                 {"graph_d", std::to_string(d)},
                 {"b", std::to_string(b)},
                 {"hash_mode", options.mode == HashMode::FullIndep ? "full" : "poly10"},
                 {"hash_bits", std::to_string(hash_bits)},
                 {"class_size", std::to_string(cls.size())}};
  if (!is_balanced(c)) dist.warnings.push_back("coloring is not balanced");

  // Distinct neighbourhoods times realised splits; 10-wise hashing realises
  // every split of at most 10 points.
  if (options.mode == HashMode::FullIndep || d <= 10) {
    dist.support_size = BigInt(distinct_hoods.size()) * pow2(d);
  }

  const unsigned split_bits = options.mode == HashMode::FullIndep ? d : 10 * hash_bits;
  const bool listable = options.list_support && split_bits <= 24 &&
                        BigInt(cls.size()) * pow2(split_bits) <= BigInt(options.max_support);

  if (listable) {
    std::map<Rectangle, std::uint64_t> counts;
    for (const auto& nb : hoods) {
      if (options.mode == HashMode::FullIndep) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
          Rectangle r;
          for (unsigned i = 0; i < d; ++i) ((mask >> i) & 1 ? r.right : r.left).push_back(nb[i]);
          ++counts[r];
        }
      } else {
        HashFamily fam(hash_bits, 10);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << split_bits); ++s) {
          HashSeed seed = seed_from_index(fam, s);
          Rectangle r;
          for (Vertex u : nb) (hash_eval(fam, seed, u) ? r.right : r.left).push_back(u);
          ++counts[r];
        }
      }
    }
    const BigInt denom = BigInt(cls.size()) * pow2(split_bits);
    dist.support.reserve(counts.size());
    for (auto& [rect, count] : counts) dist.support.emplace_back(rect, Rational(BigInt(count), denom));
    dist.support_size = BigInt(dist.support.size());
    if (dist.total_mass() != 1) throw InvariantViolation("expander distribution mass != 1");
    dist.mode = DistMode::Exact;
  } else {
    dist.mode = DistMode::SamplerOnly;
  }
  dist.sampler = std::make_shared<ExpanderSource>(std::move(hoods), options.mode, hash_bits);
  return dist;
}

Rectangle sample_rectangle(const HittingDistribution& dist, Rng& rng) {
  if (!dist.sampler) throw UnsupportedError("distribution has no sampler");
  return dist.sampler->draw(rng);
}

Rectangle sample_rectangle(const HittingDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  return sample_rectangle(dist, rng);
}

HittingDistribution sparsify(const HittingDistribution& dist, std::uint64_t c, std::uint64_t seed) {
  if (c == 0) throw ValidationError("sparsify: c must be positive");
  const unsigned k = ceil_log2(std::max(dist.gadget.rows, dist.gadget.cols));
  const std::uint64_t draws = c << k;
  std::map<Rectangle, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < draws; ++i) {
    Rng rng = Rng::derive(seed, i);
    ++counts[sample_rectangle(dist, rng)];
  }
  std::vector<std::pair<Rectangle, Rational>> support;
  support.reserve(counts.size());
  for (auto& [rect, count] : counts) {
    support.emplace_back(rect, Rational(BigInt(count), BigInt(draws)));
  }
  auto out = make_exact_distribution(std::move(support), dist.color, dist.gadget);
  out.params = dist.params;
  out.params.emplace_back("sparsify_c", std::to_string(c));
  out.params.emplace_back("sparsify_k", std::to_string(k));
  out.params.emplace_back("sparsify_seed", std::to_string(seed));
  out.warnings = dist.warnings;
  return out;
}

// --- Text format ------------------------------------------------------------

namespace {

void write_indices(std::ostream& out, const std::vector<std::uint32_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
}

std::vector<std::uint32_t> parse_indices(const std::string& field) {
  std::vector<std::uint32_t> out;
  for (const auto& tok : split_ws(field)) out.push_back(static_cast<std::uint32_t>(parse_u64(tok, "index")));
  return out;
}

}  // namespace

void write_distribution(std::ostream& out, const HittingDistribution& dist) {
  out << "HITDIST 1\n";
  out << "gadget " << hex64(dist.gadget.hash) << ' ' << dist.gadget.rows << ' ' << dist.gadget.cols << '\n';
  out << "color " << (dist.color ? std::to_string(*dist.color) : std::string("none")) << '\n';
  out << "mode " << (dist.exact() ? "exact" : "sampler-only") << '\n';
  for (const auto& [key, value] : dist.params) out << "param " << key << ' ' << value << '\n';
  out << "support-size " << (dist.support_size ? dist.support_size->str() : std::string("unknown")) << '\n';
  out << "rectangles " << dist.support.size() << '\n';
  for (const auto& [rect, p] : dist.support) {
    write_indices(out, rect.left);
    out << " | ";
    write_indices(out, rect.right);
    out << " | " << to_fraction_string(p) << '\n';
  }
}

HittingDistribution read_distribution(std::istream& in) {
  std::string line;
  auto expect = [&](const char* key) {
    if (!next_content_line(in, line)) throw ValidationError(std::string("distribution: missing ") + key);
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] != key) throw ValidationError(std::string("distribution: expected ") + key);
    return tok;
  };
  if (expect("HITDIST").size() != 2) throw ValidationError("distribution: bad header");
  auto g = expect("gadget");
  if (g.size() != 4) throw ValidationError("distribution: bad gadget line");
  GadgetRef ref{parse_u64(g[2], "rows"), parse_u64(g[3], "cols"), std::stoull(g[1], nullptr, 16)};
  auto col = expect("color");
  std::optional<int> color;
  if (col.size() != 2) throw ValidationError("distribution: bad color line");
  if (col[1] != "none") color = static_cast<int>(parse_u64(col[1], "color"));
  auto mode = expect("mode");
  if (mode.size() != 2) throw ValidationError("distribution: bad mode line");

  std::vector<std::pair<std::string, std::string>> params;
  std::optional<BigInt> support_size;
  for (;;) {
    if (!next_content_line(in, line)) throw ValidationError("distribution: missing rectangles line");
    auto tok = split_ws(line);
    if (tok.size() == 3 && tok[0] == "param") {
      params.emplace_back(tok[1], tok[2]);
    } else if (tok.size() == 2 && tok[0] == "support-size") {
      if (tok[1] != "unknown") support_size = BigInt(tok[1]);
    } else if (tok.size() == 2 && tok[0] == "rectangles") {
      break;
    } else {
      throw ValidationError("distribution: unexpected line '" + line + "'");
    }
  }
  const auto count = parse_u64(split_ws(line)[1], "rectangle count");
  std::vector<std::pair<Rectangle, Rational>> support;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ValidationError("distribution: truncated support");
    auto first = line.find('|');
    auto second = first == std::string::npos ? first : line.find('|', first + 1);
    if (second == std::string::npos) throw ValidationError("distribution: bad support line");
    Rectangle r{parse_indices(line.substr(0, first)), parse_indices(line.substr(first + 1, second - first - 1))};
    auto p = split_ws(line.substr(second + 1));
    if (p.size() != 1) throw ValidationError("distribution: bad probability");
    support.emplace_back(std::move(r), parse_rational(p[0]));
  }

  HittingDistribution dist;
  if (mode[1] == "exact") {
    dist = make_exact_distribution(std::move(support), color, ref);
  } else if (mode[1] == "sampler-only") {
    dist.color = color;
    dist.gadget = ref;
    dist.mode = DistMode::SamplerOnly;
    dist.support_size = support_size;
  } else {
    throw ValidationError("distribution: unknown mode " + mode[1]);
  }
  dist.params = std::move(params);
  return dist;
}

}  // namespace gadgetforge
