#pragma once

#include "gadgetforge/algebra.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace gadgetforge {

// Subset of {0..m-1}^n. Tuples are packed as sum_i x_i m^i (coordinate 0 is
// least significant) and kept sorted.
class GridSet {
 public:
  static constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 24;

  GridSet(unsigned n, std::uint64_t m, std::vector<std::uint64_t> codes);
  static GridSet from_tuples(unsigned n, std::uint64_t m,
                             const std::vector<std::vector<std::uint64_t>>& tuples);

  unsigned arity() const { return n_; }
  std::uint64_t alphabet() const { return m_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  const std::vector<std::uint64_t>& codes() const { return codes_; }

  std::uint64_t encode(const std::vector<std::uint64_t>& tuple) const;
  std::vector<std::uint64_t> decode(std::uint64_t code) const;
  bool contains(const std::vector<std::uint64_t>& tuple) const;
  // m^i, the place value of coordinate i.
  std::uint64_t place(unsigned i) const { return place_[i]; }

  friend bool operator==(const GridSet&, const GridSet&) = default;

 private:
  unsigned n_;
  std::uint64_t m_;
  std::vector<std::uint64_t> place_;
  std::vector<std::uint64_t> codes_;
};

// X_2 = {(j, j)} u {(j, j + 1)}; X_{n+1} = X_n x [m] u (complement of X_n) x {0}.
GridSet build_xn(unsigned n, std::uint64_t m);

// In(X, s): each tuple x becomes all (s x_i + r_i) with 0 <= r_i < s.
GridSet inflate(const GridSet& x, std::uint64_t s);

struct DegreeStats {
  std::vector<Rational> avg_deg;  // |X| / |X projected away from coordinate i|
  std::vector<std::uint64_t> min_deg;
};

DegreeStats degree_stats(const GridSet& x);

// Largest Y within x with MinDeg_i(Y) >= threshold for all i, found by
// repeatedly deleting elements in a fiber of size < threshold. With
// order_seed the deletion order is randomised; the fixpoint does not change.
GridSet peel_core(const GridSet& x, std::uint64_t threshold,
                  std::optional<std::uint64_t> order_seed = std::nullopt);

struct Theorem5Report {
  unsigned n = 0;
  std::uint64_t s = 0;
  Rational eps;
  std::uint64_t m = 0;  // smallest m with n (1 - 1/m)^{n-1} >= n - eps
  std::size_t size = 0;
  std::vector<Rational> avg_deg;
  Rational avg_target;  // s (n - eps)
  bool avg_ok = false;
  bool core_empty = false;
  bool ok() const { return avg_ok && core_empty; }
};

Theorem5Report verify_theorem5(unsigned n, std::uint64_t s, const Rational& eps);

// Deletes elements in fibers of degree < delta d / n; requires AvgDeg_i >= d.
GridSet thickness_prune(const GridSet& x, const Rational& delta, const Rational& d);

void write_gridset(std::ostream& out, const GridSet& x);
GridSet read_gridset(std::istream& in);

}  // namespace gadgetforge
