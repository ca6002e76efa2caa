#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library except for the shared BigInt/Rational types.

#include "gadgetforge/algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using gadgetforge::BigInt;
using gadgetforge::Rational;

inline std::int64_t mod(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt big_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Smallest non-square mod q by listing all squares.
inline std::int64_t smallest_nonresidue(std::int64_t q) {
  std::set<std::int64_t> sq;
  for (std::int64_t x = 0; x < q; ++x) sq.insert(x * x % q);
  for (std::int64_t d = 1; d < q; ++d)
    if (!sq.count(d)) return d;
  return -1;
}

// Squares of F_q[w]/(w^2 - d) as codes c0 + q*c1, by squaring every element.
inline std::vector<bool> ext_squares(std::int64_t q, std::int64_t d) {
  std::vector<bool> is(q * q, false);
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) {
      std::int64_t c0 = mod(a * a + b * b % q * d, q);
      std::int64_t c1 = mod(2 * a * b, q);
      is[c0 + q * c1] = true;
    }
  return is;
}

// Dense adjacency of AP_q straight from the relation a*x = b + y; index x*q+y.
inline std::vector<std::vector<int>> ap_matrix(std::int64_t q) {
  const std::int64_t m = q * q;
  std::vector<std::vector<int>> a(m, std::vector<int>(m, 0));
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y)
      for (std::int64_t u = 0; u < q; ++u)
        for (std::int64_t v = 0; v < q; ++v)
          if (mod(u * x - v - y, q) == 0) a[x * q + y][u * q + v] = 1;
  return a;
}

inline std::vector<double> eigenvalues_desc(const std::vector<std::vector<int>>& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// SQR colouring of AP_q: c((a, b)) = [1 + w a is a square].
inline std::vector<int> sqr_coloring(std::int64_t q) {
  const auto d = smallest_nonresidue(q);
  const auto sq = ext_squares(q, d);
  std::vector<int> c(q * q);
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) c[a * q + b] = sq[1 + q * a] ? 1 : 0;
  return c;
}

// Subsets as sorted vectors; the hit predicate on explicit rectangles.
inline bool meets(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  for (auto x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

// All k-subsets of {0..n-1}.
inline std::vector<std::vector<std::uint32_t>> subsets(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

using Tuple = std::vector<std::uint64_t>;

// Fiber sizes of y along coordinate i, keyed by the punctured tuple.
inline std::map<Tuple, std::uint64_t> fibers(const std::set<Tuple>& y, unsigned i) {
  std::map<Tuple, std::uint64_t> f;
  for (auto t : y) {
    t[i] = ~std::uint64_t{0};
    ++f[t];
  }
  return f;
}

inline std::uint64_t min_deg(const std::set<Tuple>& y, unsigned i) {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& [k, v] : fibers(y, i)) best = std::min(best, v);
  return best;
}

inline Rational avg_deg(const std::set<Tuple>& y, unsigned i) {
  return Rational(BigInt(y.size()), BigInt(fibers(y, i).size()));
}

// Some element is alone in its fiber for some coordinate.
inline bool has_unique_element(const std::set<Tuple>& y, unsigned n) {
  for (unsigned i = 0; i < n; ++i)
    if (min_deg(y, i) == 1) return true;
  return false;
}

}  // namespace oracle
