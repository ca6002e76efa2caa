#include "gadgetforge/gadgets.hpp"

#include "gadgetforge/errors.hpp"
#include "gadgetforge/textio.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>

namespace gadgetforge {

char trit_char(Trit t) {
  switch (t) {
    case Trit::Zero:
      return '0';
    case Trit::One:
      return '1';
    case Trit::Undef:
      return '*';
  }
  return '?';
}

std::size_t Coloring::ones() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<Vertex> Coloring::color_class(int b) const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < bits.size(); ++v) {
    if (bits[v] == b) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

PartialGadget::PartialGadget(std::size_t rows, std::size_t cols, std::vector<Trit> cells,
                             std::vector<VertexLabel> row_labels,
                             std::vector<VertexLabel> col_labels)
    : rows_(rows),
      cols_(cols),
      cells_(std::move(cells)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (cells_.size() != rows_ * cols_) throw DimensionError("gadget cell count != rows*cols");
  if (!row_labels_.empty() && row_labels_.size() != rows_) {
    throw DimensionError("row label map does not match row count");
  }
  if (!col_labels_.empty() && col_labels_.size() != cols_) {
    throw DimensionError("column label map does not match column count");
  }
}

std::size_t PartialGadget::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](Trit t) { return t != Trit::Undef; }));
}

std::uint64_t PartialGadget::identity_hash() const {
  std::string header = "GADGET " + std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
  std::uint64_t h = fnv1a64(header);
  std::string row(cols_, ' ');
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) row[c] = trit_char(at(r, c));
    h = fnv1a64(row, h);
  }
  return h;
}

Trit colored_graph_cell(const RegularGraph& g, const Coloring& c, Vertex u, Vertex v) {
  if (c.size() != g.vertex_count()) throw DimensionError("coloring length != vertex count");
  if (u == v) return Trit::Undef;
  auto common = common_neighbors(g, u, v);
  if (common.empty()) return Trit::Undef;
  if (common.size() > 1) {
    throw IllDefinedGadget("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                           " share " + std::to_string(common.size()) + " neighbours");
  }
  return c[common[0]] ? Trit::One : Trit::Zero;
}

PartialGadget build_gadget_from_colored_graph(const RegularGraph& g, const Coloring& c) {
  const std::size_t m = g.vertex_count();
  if (c.size() != m) throw DimensionError("coloring length != vertex count");
  if (m > PartialGadget::kMaxDenseSide) {
    throw BudgetExceeded("gadget side exceeds dense limit; use colored_graph_cell");
  }
  if (auto mc = max_common_neighbors(g); mc > 1) {
    throw IllDefinedGadget("graph has two vertices with " + std::to_string(mc) +
                           " common neighbours");
  }
  std::vector<Trit> cells(m * m, Trit::Undef);
  // Every pair with a common neighbour w lies in Γ(w) x Γ(w).
  for (Vertex w = 0; w < m; ++w) {
    Trit value = c[w] ? Trit::One : Trit::Zero;
    auto nb = g.neighbors(w);
    for (Vertex u : nb) {
      for (Vertex v : nb) {
        if (u != v) cells[u * m + v] = value;
      }
    }
  }
  return PartialGadget(m, m, std::move(cells), g.labels(), g.labels());
}

bool is_balanced(const Coloring& c) {
  const std::size_t ones = c.ones();
  const std::size_t m = c.size();
  return 3 * ones >= m && 3 * ones <= 2 * m;
}

Coloring build_sqr_coloring(std::uint32_t q) {
  if (q % 2 == 0) throw UnsupportedError("SQR coloring requires an odd prime q");
  ExtField field(q);
  std::vector<std::uint8_t> square_by_a(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    square_by_a[a] = ext_is_square(field.one() + field.w() * field(a, 0)) ? 1 : 0;
  }
  Coloring c;
  c.bits.resize(std::size_t{q} * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) c.bits[ap_vertex(q, a, b)] = square_by_a[a];
  }
  return c;
}

int eval_sqr(const ExtFieldElem& a, const ExtFieldElem& b) { return ext_is_square(a - b) ? 1 : 0; }

ExtFieldElem ap_vertex_to_ext(const ExtField& field, Vertex v) {
  const std::uint32_t q = field.base_order();
  return field(v / q, v % q);
}

SubfunctionReport verify_subfunction(const PartialGadget& gadget, std::uint32_t q) {
  ExtField field(q);
  const std::size_t m = std::size_t{q} * q;
  if (gadget.rows() != m || gadget.cols() != m) {
    throw DimensionError("gadget is not q^2 x q^2 for q = " + std::to_string(q));
  }
  std::vector<ExtFieldElem> elems;
  elems.reserve(m);
  for (Vertex v = 0; v < m; ++v) elems.push_back(ap_vertex_to_ext(field, v));
  // Squareness of every difference, looked up by difference index.
  std::vector<std::uint8_t> is_sq(m);
  for (Vertex v = 0; v < m; ++v) is_sq[v] = ext_is_square(elems[v]) ? 1 : 0;

  SubfunctionReport report;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      ++report.cells_checked;
      Trit t = gadget.at(r, c);
      if (t == Trit::Undef) continue;
      ++report.defined_cells;
      ExtFieldElem diff = elems[r] - elems[c];
      int expected = is_sq[diff.c0().value() * q + diff.c1().value()];
      if (static_cast<int>(t) != expected && !report.counterexample) {
        report.counterexample = CellWitness{r, c, t, expected};
      }
    }
  }
  return report;
}

// --- Disjointness -----------------------------------------------------------

DisjGadget::DisjGadget(std::uint32_t m, std::uint32_t k) : m_(m), k_(k), size_(0) {
  if (m < 1 || m > 64) throw ValidationError("DisjGadget: need 1 <= m <= 64");
  if (k > m) throw ValidationError("DisjGadget: k > m");
  binom_.assign(m + 1, std::vector<std::uint64_t>(k + 1, 0));
  for (std::uint32_t n = 0; n <= m; ++n) {
    binom_[n][0] = 1;
    for (std::uint32_t r = 1; r <= std::min(n, k); ++r) {
      binom_[n][r] = binom_[n - 1][r - 1] + (r <= n - 1 ? binom_[n - 1][r] : 0);
    }
  }
  size_ = binom_[m][k];
}

std::uint64_t DisjGadget::choose(std::uint32_t n, std::uint32_t r) const {
  return r <= k_ && n <= m_ ? binom_[n][r] : 0;
}

std::uint64_t DisjGadget::rank(std::uint64_t subset) const {
  if (static_cast<std::uint32_t>(std::popcount(subset)) != k_ ||
      (m_ < 64 && (subset >> m_) != 0)) {
    throw ValidationError("subset is not a k-subset of [m]");
  }
  std::uint64_t r = 0;
  std::uint32_t i = 1;
  for (std::uint64_t s = subset; s != 0; s &= s - 1, ++i) {
    r += choose(static_cast<std::uint32_t>(std::countr_zero(s)), i);
  }
  return r;
}

std::uint64_t DisjGadget::unrank(std::uint64_t rank) const {
  if (rank >= size_) throw ValidationError("rank out of range");
  std::uint64_t subset = 0;
  std::uint32_t c = m_;
  for (std::uint32_t i = k_; i >= 1; --i) {
    do {
      --c;
    } while (choose(c, i) > rank);
    rank -= choose(c, i);
    subset |= std::uint64_t{1} << c;
  }
  return subset;
}

int DisjGadget::eval(std::uint64_t a_rank, std::uint64_t b_rank) const {
  return (unrank(a_rank) & unrank(b_rank)) == 0 ? 1 : 0;
}

int eval_disj(const DisjGadget& d, std::uint64_t a_rank, std::uint64_t b_rank) {
  return d.eval(a_rank, b_rank);
}

PartialGadget disj_gadget_matrix(const DisjGadget& d) {
  if (d.size() > PartialGadget::kMaxDenseSide) {
    throw BudgetExceeded("DISJ matrix side exceeds dense limit");
  }
  const std::size_t n = d.size();
  std::vector<std::uint64_t> sets(n);
  for (std::size_t r = 0; r < n; ++r) sets[r] = d.unrank(r);
  std::vector<Trit> cells(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      cells[a * n + b] = (sets[a] & sets[b]) == 0 ? Trit::One : Trit::Zero;
    }
  }
  return PartialGadget(n, n, std::move(cells));
}

// --- Text formats -----------------------------------------------------------

void write_gadget(std::ostream& out, const PartialGadget& g) {
  out << "GADGET " << g.rows() << ' ' << g.cols() << '\n';
  std::string row(g.cols(), ' ');
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) row[c] = trit_char(g.at(r, c));
    out << row << '\n';
  }
}

PartialGadget read_gadget(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("gadget: empty input");
  auto header = split_ws(line);
  if (header.size() != 3 || header[0] != "GADGET") throw ValidationError("gadget: bad header");
  auto rows = parse_u64(header[1], "rows");
  auto cols = parse_u64(header[2], "cols");
  std::vector<Trit> cells;
  cells.reserve(rows * cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) throw ValidationError("gadget: truncated matrix");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != cols) throw ValidationError("gadget: row " + std::to_string(r) + " has wrong width");
    for (char ch : line) {
      switch (ch) {
        case '0':
          cells.push_back(Trit::Zero);
          break;
        case '1':
          cells.push_back(Trit::One);
          break;
        case '*':
          cells.push_back(Trit::Undef);
          break;
        default:
          throw ValidationError(std::string("gadget: bad cell character '") + ch + "'");
      }
    }
  }
  return PartialGadget(rows, cols, std::move(cells));
}

void write_coloring(std::ostream& out, const Coloring& c) {
  std::string s(c.size(), '0');
  for (std::size_t i = 0; i < c.size(); ++i) s[i] = c[i] ? '1' : '0';
  out << s << '\n';
}

Coloring read_coloring(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("coloring: empty input");
  Coloring c;
  for (char ch : line) {
    if (ch != '0' && ch != '1') throw ValidationError("coloring: expected only 0/1 characters");
    c.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return c;
}

}  // namespace gadgetforge
