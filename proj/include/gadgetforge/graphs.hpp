#pragma once

#include "gadgetforge/algebra.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gadgetforge {

using Vertex = std::uint32_t;
using VertexLabel = std::pair<std::uint32_t, std::uint32_t>;

// Undirected d-regular graph without parallel edges. A self-loop appears once
// in its vertex's neighbour list and contributes 1 to the degree.
class RegularGraph {
 public:
  // Validates symmetry, sortedness, absence of duplicates and exact regularity.
  RegularGraph(std::vector<std::vector<Vertex>> adjacency,
               std::vector<VertexLabel> labels = {});

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(adj_.size()); }
  std::uint32_t degree() const { return d_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  bool adjacent(Vertex u, Vertex v) const;
  bool has_self_loop(Vertex v) const { return adjacent(v, v); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<VertexLabel>& labels() const { return labels_; }

  friend bool operator==(const RegularGraph&, const RegularGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexLabel> labels_;
  std::uint32_t d_ = 0;
};

// Affine-plane graph on F_q^2: (x, y) ~ (a, b) iff a*x = b + y. Vertex (x, y)
// has index x*q + y. Only primality of q is required.
RegularGraph build_ap(std::uint32_t q);

// Index of vertex (x, y) of AP_q.
inline Vertex ap_vertex(std::uint32_t q, std::uint32_t x, std::uint32_t y) { return x * q + y; }

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending
  double gamma_hat = 0;             // second-largest |eigenvalue| / d
  int multiplicity_of_d = 0;
  int sweeps = 0;
};

// Cyclic Jacobi on the dense adjacency matrix until the off-diagonal
// Frobenius norm drops below tol.
SpectralReport spectral_report(const RegularGraph& g, double tol = 1e-9);

// Eigenvalues of a dense symmetric matrix (row-major n x n), descending.
std::vector<double> jacobi_eigenvalues(std::vector<double> matrix, std::size_t n, double tol,
                                       int* sweeps_out = nullptr);

// Max over distinct u, v of |Γ(u) ∩ Γ(v)|.
std::uint32_t max_common_neighbors(const RegularGraph& g);

// Sorted Γ(u) ∩ Γ(v).
std::vector<Vertex> common_neighbors(const RegularGraph& g, Vertex u, Vertex v);

// 2d + 4 > d^2 (2 γ^2 + 4 (1 - γ^2) / m), evaluated exactly.
bool check_affine_like(std::uint64_t m, std::uint64_t d, const Rational& gamma_squared);
// The double is converted to the exact rational it represents.
bool check_affine_like(std::uint64_t m, std::uint64_t d, double gamma);

struct ExpansionReport {
  std::size_t samples = 0;
  double min_slack = 0;  // min of |Γ(A)|/|A| - 1/(γ² + (1-γ²)|A|/m)
  std::size_t min_slack_size = 0;
  std::optional<std::vector<Vertex>> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

// Slack of the spectral vertex-expansion bound for a single set A.
double expansion_slack(const RegularGraph& g, std::span<const Vertex> a, double gamma);

// Random subsets with log-uniform sizes in [1, m]; sample i uses stream (seed, i).
ExpansionReport check_vertex_expansion(const RegularGraph& g, double gamma, std::size_t samples,
                                       std::uint64_t seed);

// Text format: "GRAPH m d", then "v: n1 ... nd", then optional "LABEL v x y".
void write_graph(std::ostream& out, const RegularGraph& g);
RegularGraph read_graph(std::istream& in);

}  // namespace gadgetforge
