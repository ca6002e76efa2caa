#pragma once

#include "gadgetforge/algebra.hpp"
#include "gadgetforge/graphs.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace gadgetforge {

enum class Trit : std::uint8_t { Zero = 0, One = 1, Undef = 2 };

char trit_char(Trit t);

struct Coloring {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::uint8_t operator[](std::size_t v) const { return bits[v]; }
  std::size_t ones() const;
  std::vector<Vertex> color_class(int b) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Dense partial two-party function over rows x cols.
class PartialGadget {
 public:
  static constexpr std::size_t kMaxDenseSide = 2048;

  PartialGadget(std::size_t rows, std::size_t cols, std::vector<Trit> cells,
                std::vector<VertexLabel> row_labels = {}, std::vector<VertexLabel> col_labels = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Trit at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  const std::vector<Trit>& cells() const { return cells_; }
  const std::vector<VertexLabel>& row_labels() const { return row_labels_; }
  const std::vector<VertexLabel>& col_labels() const { return col_labels_; }
  std::size_t defined_count() const;

  // Hash of the dimensions and cell contents (labels excluded).
  std::uint64_t identity_hash() const;

  friend bool operator==(const PartialGadget&, const PartialGadget&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Trit> cells_;
  std::vector<VertexLabel> row_labels_;
  std::vector<VertexLabel> col_labels_;
};

// On-demand g(G, c)(u, v): c(w) for the unique common neighbour w when u != v.
Trit colored_graph_cell(const RegularGraph& g, const Coloring& c, Vertex u, Vertex v);

// Materialises g(G, c). Throws IllDefinedGadget when two vertices share
// two or more neighbours.
PartialGadget build_gadget_from_colored_graph(const RegularGraph& g, const Coloring& c);

// |V|/3 <= |c^{-1}(1)| <= 2|V|/3, compared exactly.
bool is_balanced(const Coloring& c);

// c((a, b)) = 1 iff 1 + w*a is a square in F_{q^2}; indexed like AP_q.
Coloring build_sqr_coloring(std::uint32_t q);

// 1 iff a - b is a square in F_{q^2}.
int eval_sqr(const ExtFieldElem& a, const ExtFieldElem& b);

// AP_q vertex (x, y) as the field element x + y*w.
ExtFieldElem ap_vertex_to_ext(const ExtField& field, Vertex v);

struct CellWitness {
  std::size_t row = 0;
  std::size_t col = 0;
  Trit gadget_value = Trit::Undef;
  int expected = 0;
};

struct SubfunctionReport {
  std::uint64_t cells_checked = 0;
  std::uint64_t defined_cells = 0;
  std::optional<CellWitness> counterexample;
  bool ok() const { return !counterexample.has_value(); }
};

// Compares every defined cell of a q^2 x q^2 gadget against SQR^q.
SubfunctionReport verify_subfunction(const PartialGadget& gadget, std::uint32_t q);

// DISJ^m_k on k-subsets of {0, ..., m-1}, ranked colexicographically.
// Subsets are bitmasks, so m <= 64.
class DisjGadget {
 public:
  DisjGadget(std::uint32_t m, std::uint32_t k);

  std::uint32_t m() const { return m_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t rank(std::uint64_t subset) const;
  std::uint64_t unrank(std::uint64_t rank) const;
  int eval(std::uint64_t a_rank, std::uint64_t b_rank) const;

 private:
  std::uint64_t choose(std::uint32_t n, std::uint32_t r) const;

  std::uint32_t m_;
  std::uint32_t k_;
  std::uint64_t size_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

int eval_disj(const DisjGadget& d, std::uint64_t a_rank, std::uint64_t b_rank);

PartialGadget disj_gadget_matrix(const DisjGadget& d);

// "GADGET rows cols", then one row per line over {0, 1, *}.
void write_gadget(std::ostream& out, const PartialGadget& g);
PartialGadget read_gadget(std::istream& in);

// One line of '0'/'1' characters.
void write_coloring(std::ostream& out, const Coloring& c);
Coloring read_coloring(std::istream& in);

}  // namespace gadgetforge
