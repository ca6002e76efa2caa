#include "gadgetforge/thickness.hpp"

#include "gadgetforge/errors.hpp"
#include "gadgetforge/rng.hpp"
#include "gadgetforge/textio.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace gadgetforge {

namespace {

constexpr std::uint64_t kMaxCodeSpace = std::uint64_t{1} << 62;

std::vector<std::uint64_t> place_values(unsigned n, std::uint64_t m) {
  if (n < 1 || n > 8) throw ValidationError("grid set: need 1 <= n <= 8");
  if (m < 1) throw ValidationError("grid set: alphabet must be nonempty");
  std::vector<std::uint64_t> place(n + 1, 1);
  for (unsigned i = 1; i <= n; ++i) {
    if (place[i - 1] > kMaxCodeSpace / m) throw BudgetExceeded("grid set: m^n does not fit 62 bits");
    place[i] = place[i - 1] * m;
  }
  return place;
}

// Per coordinate, the fiber id of every element (elements sharing all other
// coordinates) and each fiber's member list.
struct FiberIndex {
  std::vector<std::uint32_t> fiber_of;                    // [element * n + i]
  std::vector<std::vector<std::uint32_t>> members;        // by fiber id
  std::vector<unsigned> coord;                            // by fiber id
};

FiberIndex index_fibers(const GridSet& x) {
  const unsigned n = x.arity();
  const auto& codes = x.codes();
  FiberIndex idx;
  idx.fiber_of.resize(codes.size() * n);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(codes.size());
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t p = x.place(i);
    for (std::size_t e = 0; e < codes.size(); ++e) {
      keyed[e] = {codes[e] - (codes[e] / p % x.alphabet()) * p, static_cast<std::uint32_t>(e)};
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t j = 0; j < keyed.size(); ++j) {
      if (j == 0 || keyed[j].first != keyed[j - 1].first) {
        idx.members.emplace_back();
        idx.coord.push_back(i);
      }
      idx.members.back().push_back(keyed[j].second);
      idx.fiber_of[keyed[j].second * n + i] = static_cast<std::uint32_t>(idx.members.size() - 1);
    }
  }
  return idx;
}

}  // namespace

GridSet::GridSet(unsigned n, std::uint64_t m, std::vector<std::uint64_t> codes)
    : n_(n), m_(m), place_(place_values(n, m)), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  if (std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end()) {
    throw ValidationError("grid set: duplicate tuple");
  }
  if (!codes_.empty() && codes_.back() >= place_[n_]) throw ValidationError("grid set: entry >= m");
  place_.pop_back();
}

GridSet GridSet::from_tuples(unsigned n, std::uint64_t m,
                             const std::vector<std::vector<std::uint64_t>>& tuples) {
  GridSet shape(n, m, {});
  std::vector<std::uint64_t> codes;
  codes.reserve(tuples.size());
  for (const auto& t : tuples) codes.push_back(shape.encode(t));
  return GridSet(n, m, std::move(codes));
}

std::uint64_t GridSet::encode(const std::vector<std::uint64_t>& tuple) const {
  if (tuple.size() != n_) throw DimensionError("tuple length != n");
  std::uint64_t code = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (tuple[i] >= m_) throw ValidationError("tuple entry >= m");
    code += tuple[i] * place_[i];
  }
  return code;
}

std::vector<std::uint64_t> GridSet::decode(std::uint64_t code) const {
  std::vector<std::uint64_t> t(n_);
  for (unsigned i = 0; i < n_; ++i) t[i] = code / place_[i] % m_;
  return t;
}

bool GridSet::contains(const std::vector<std::uint64_t>& tuple) const {
  return std::binary_search(codes_.begin(), codes_.end(), encode(tuple));
}

GridSet build_xn(unsigned n, std::uint64_t m) {
  if (n < 2 || n > 8) throw ValidationError("build_xn: need 2 <= n <= 8");
  if (m < 2) throw ValidationError("build_xn: need m >= 2");
  if (BigInt(m) * BigInt(m) > BigInt(GridSet::kMaxElements) ||
      boost::multiprecision::pow(BigInt(m), n) > BigInt(GridSet::kMaxElements)) {
    throw BudgetExceeded("build_xn: m^n above the 2^24 element budget");
  }
  // Membership bitmap over [m]^j, grown one coordinate at a time.
  std::vector<std::uint8_t> in(m * m, 0);
  for (std::uint64_t j = 0; j < m; ++j) {
    in[j + j * m] = 1;
    if (j + 1 < m) in[j + (j + 1) * m] = 1;
  }
  std::uint64_t cube = m * m;
  for (unsigned arity = 2; arity < n; ++arity) {
    std::vector<std::uint8_t> next(cube * m, 0);
    for (std::uint64_t y = 0; y < cube; ++y) {
      if (in[y]) {
        for (std::uint64_t j = 0; j < m; ++j) next[y + j * cube] = 1;
      } else {
        next[y] = 1;
      }
    }
    in.swap(next);
    cube *= m;
  }
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < cube; ++c) {
    if (in[c]) codes.push_back(c);
  }
  return GridSet(n, m, std::move(codes));
}

GridSet inflate(const GridSet& x, std::uint64_t s) {
  if (s < 1) throw ValidationError("inflate: s must be >= 1");
  const unsigned n = x.arity();
  const BigInt copies = boost::multiprecision::pow(BigInt(s), n);
  if (copies * x.size() > BigInt(GridSet::kMaxElements)) {
    throw BudgetExceeded("inflate: s^n |X| above the 2^24 element budget");
  }
  GridSet shape(n, x.alphabet() * s, {});
  const auto c = static_cast<std::uint64_t>(copies);
  std::vector<std::uint64_t> codes;
  codes.reserve(c * x.size());
  std::vector<std::uint64_t> t(n);
  for (std::uint64_t code : x.codes()) {
    auto base = x.decode(code);
    for (std::uint64_t off = 0; off < c; ++off) {
      std::uint64_t rest = off;
      for (unsigned i = 0; i < n; ++i) {
        t[i] = s * base[i] + rest % s;
        rest /= s;
      }
      codes.push_back(shape.encode(t));
    }
  }
  return GridSet(n, x.alphabet() * s, std::move(codes));
}

DegreeStats degree_stats(const GridSet& x) {
  if (x.empty()) throw ValidationError("degree_stats: empty set");
  const unsigned n = x.arity();
  auto idx = index_fibers(x);
  DegreeStats stats;
  stats.avg_deg.assign(n, Rational(0));
  stats.min_deg.assign(n, ~std::uint64_t{0});
  std::vector<std::uint64_t> fibers(n, 0);
  for (std::size_t f = 0; f < idx.members.size(); ++f) {
    const unsigned i = idx.coord[f];
    ++fibers[i];
    stats.min_deg[i] = std::min<std::uint64_t>(stats.min_deg[i], idx.members[f].size());
  }
  for (unsigned i = 0; i < n; ++i) stats.avg_deg[i] = Rational(BigInt(x.size()), BigInt(fibers[i]));
  return stats;
}

GridSet peel_core(const GridSet& x, std::uint64_t threshold, std::optional<std::uint64_t> order_seed) {
  if (threshold < 1) throw ValidationError("peel_core: threshold must be >= 1");
  const unsigned n = x.arity();
  const std::size_t count = x.size();
  if (count == 0) return x;
  auto idx = index_fibers(x);
  std::vector<std::uint64_t> live(idx.members.size());
  for (std::size_t f = 0; f < live.size(); ++f) live[f] = idx.members[f].size();
  std::vector<std::uint8_t> alive(count, 1), queued(count, 0);
  std::vector<std::uint32_t> work;
  auto enqueue = [&](std::uint32_t e) {
    if (alive[e] && !queued[e]) {
      queued[e] = 1;
      work.push_back(e);
    }
  };
  for (std::size_t f = 0; f < live.size(); ++f) {
    if (live[f] < threshold) {
      for (auto e : idx.members[f]) enqueue(e);
    }
  }
  std::optional<Rng> rng;
  if (order_seed) rng.emplace(*order_seed);
  while (!work.empty()) {
    std::size_t pick = rng ? static_cast<std::size_t>(rng->below(work.size())) : work.size() - 1;
    std::swap(work[pick], work.back());
    const std::uint32_t e = work.back();
    work.pop_back();
    alive[e] = 0;
    for (unsigned i = 0; i < n; ++i) {
      const auto f = idx.fiber_of[e * n + i];
      if (--live[f] + 1 == threshold) {
        for (auto other : idx.members[f]) enqueue(other);
      }
    }
  }
  std::vector<std::uint64_t> kept;
  for (std::size_t e = 0; e < count; ++e) {
    if (alive[e]) kept.push_back(x.codes()[e]);
  }
  return GridSet(n, x.alphabet(), std::move(kept));
}

Theorem5Report verify_theorem5(unsigned n, std::uint64_t s, const Rational& eps) {
  if (n < 2 || n > 8) throw ValidationError("verify_theorem5: need 2 <= n <= 8");
  if (s < 1) throw ValidationError("verify_theorem5: need s >= 1");
  if (eps <= 0) throw ValidationError("verify_theorem5: eps must be positive (no finite m reaches n)");
  Theorem5Report report;
  report.n = n;
  report.s = s;
  report.eps = eps;
  // n (m-1)^{n-1} >= (n - eps) m^{n-1}, scanned upward from m = 2.
  for (std::uint64_t m = 2;; ++m) {
    const BigInt cube = boost::multiprecision::pow(BigInt(m * s), n);
    if (cube > BigInt(GridSet::kMaxElements)) {
      throw BudgetExceeded("verify_theorem5: no feasible m within the element budget");
    }
    const BigInt lhs = n * boost::multiprecision::pow(BigInt(m - 1), n - 1);
    if (Rational(lhs) >= (n - eps) * Rational(boost::multiprecision::pow(BigInt(m), n - 1))) {
      report.m = m;
      break;
    }
  }
  const GridSet y = inflate(build_xn(n, report.m), s);
  report.size = y.size();
  report.avg_deg = degree_stats(y).avg_deg;
  report.avg_target = s * (n - eps);
  report.avg_ok = std::all_of(report.avg_deg.begin(), report.avg_deg.end(),
                              [&](const Rational& a) { return a >= report.avg_target; });
  report.core_empty = peel_core(y, s + 1).empty();
  return report;
}

GridSet thickness_prune(const GridSet& x, const Rational& delta, const Rational& d) {
  if (!(delta > 0 && delta < 1)) throw ValidationError("thickness_prune: need 0 < delta < 1");
  if (x.empty()) throw ValidationError("thickness_prune: empty set");
  for (const auto& a : degree_stats(x).avg_deg) {
    if (a < d) throw ValidationError("thickness_prune: some AvgDeg_i is below d");
  }
  const Rational bound = delta * d / x.arity();
  // Smallest integer degree that is >= bound.
  BigInt threshold = numerator(bound) / denominator(bound);
  if (Rational(threshold) < bound) ++threshold;
  if (threshold <= 1) return x;
  GridSet out = peel_core(x, static_cast<std::uint64_t>(threshold));
  if (Rational(BigInt(out.size())) < (1 - delta) * BigInt(x.size())) {
    throw InvariantViolation("thickness_prune removed more than a delta fraction");
  }
  return out;
}

void write_gridset(std::ostream& out, const GridSet& x) {
  out << "GRIDSET " << x.arity() << ' ' << x.alphabet() << ' ' << x.size() << '\n';
  for (auto code : x.codes()) {
    auto t = x.decode(code);
    for (unsigned i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << '\n';
  }
}

GridSet read_gridset(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("gridset: empty input");
  auto h = split_ws(line);
  if (h.size() != 4 || h[0] != "GRIDSET") throw ValidationError("gridset: bad header");
  const auto n = static_cast<unsigned>(parse_u64(h[1], "n"));
  const auto m = parse_u64(h[2], "m");
  const auto count = parse_u64(h[3], "count");
  std::vector<std::vector<std::uint64_t>> tuples;
  for (std::uint64_t r = 0; r < count; ++r) {
    if (!next_content_line(in, line)) throw ValidationError("gridset: truncated");
    std::vector<std::uint64_t> t;
    for (const auto& tok : split_ws(line)) t.push_back(parse_u64(tok, "entry"));
    tuples.push_back(std::move(t));
  }
  return GridSet::from_tuples(n, m, tuples);
}

}  // namespace gadgetforge
