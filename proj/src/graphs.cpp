#include "gadgetforge/graphs.hpp"

#include "gadgetforge/errors.hpp"
#include "gadgetforge/parallel.hpp"
#include "gadgetforge/rng.hpp"
#include "gadgetforge/textio.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace gadgetforge {

RegularGraph::RegularGraph(std::vector<std::vector<Vertex>> adjacency,
                           std::vector<VertexLabel> labels)
    : adj_(std::move(adjacency)), labels_(std::move(labels)) {
  const auto m = adj_.size();
  if (m == 0) throw ValidationError("graph must have at least one vertex");
  if (!labels_.empty() && labels_.size() != m) {
    throw ValidationError("label table size does not match vertex count");
  }
  d_ = static_cast<std::uint32_t>(adj_[0].size());
  for (std::size_t v = 0; v < m; ++v) {
    const auto& nb = adj_[v];
    if (nb.size() != d_) {
      throw ValidationError("vertex " + std::to_string(v) + " has degree " +
                            std::to_string(nb.size()) + ", expected " + std::to_string(d_));
    }
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= m) throw ValidationError("neighbour index out of range");
      if (i > 0 && nb[i] <= nb[i - 1]) {
        throw ValidationError("neighbour list of vertex " + std::to_string(v) +
                              " is unsorted or has parallel edges");
      }
    }
  }
  for (std::size_t v = 0; v < m; ++v) {
    for (Vertex u : adj_[v]) {
      if (!std::binary_search(adj_[u].begin(), adj_[u].end(), static_cast<Vertex>(v))) {
        throw ValidationError("adjacency is not symmetric at edge " + std::to_string(v) + "-" +
                              std::to_string(u));
      }
    }
  }
}

bool RegularGraph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = adj_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

RegularGraph build_ap(std::uint32_t q) {
  PrimeField field(q);
  std::vector<std::vector<Vertex>> adj(std::size_t{q} * q);
  std::vector<VertexLabel> labels(adj.size());
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      auto& nb = adj[ap_vertex(q, x, y)];
      labels[ap_vertex(q, x, y)] = {x, y};
      nb.reserve(q);
      // For each a there is exactly one b with a*x = b + y.
      for (std::uint32_t a = 0; a < q; ++a) {
        FieldElem b = field(a) * field(x) - field(y);
        nb.push_back(ap_vertex(q, a, b.value()));
      }
      std::sort(nb.begin(), nb.end());
    }
  }
  return RegularGraph(std::move(adj), std::move(labels));
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tol,
                                       int* sweeps_out) {
  if (a.size() != n * n) throw DimensionError("matrix size does not match n*n");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i * n + j] != a[j * n + i]) {
        throw InvariantViolation("jacobi_eigenvalues: matrix is not symmetric");
      }
    }
  }
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2 * a[i * n + j] * a[i * n + j];
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; off_norm() >= tol; ++sweep) {
    if (sweep == kMaxSweeps) {
      throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                         " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (apq == 0.0) continue;
        double app = a[p * n + p];
        double aqq = a[q * n + q];
        double theta = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double g = a[r * n + p];
          double h = a[r * n + q];
          double rp = g - s * (h + g * tau);
          double rq = h + s * (g - h * tau);
          a[r * n + p] = a[p * n + r] = rp;
          a[r * n + q] = a[q * n + r] = rq;
        }
      }
    }
  }
  if (sweeps_out) *sweeps_out = sweep;
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

SpectralReport spectral_report(const RegularGraph& g, double tol) {
  const std::size_t m = g.vertex_count();
  if (m > 10000) throw BudgetExceeded("spectral_report supports at most 10^4 vertices");
  std::vector<double> a(m * m, 0.0);
  for (Vertex v = 0; v < m; ++v) {
    for (Vertex u : g.neighbors(v)) a[v * m + u] = 1.0;
  }
  SpectralReport report;
  report.eigenvalues = jacobi_eigenvalues(std::move(a), m, tol, &report.sweeps);
  const double d = g.degree();
  if (std::abs(report.eigenvalues.front() - d) > 1e-6) {
    throw InvariantViolation("largest eigenvalue of a regular graph differs from its degree");
  }
  for (double e : report.eigenvalues) {
    if (std::abs(e - d) < 1e-6) ++report.multiplicity_of_d;
  }
  // Drop one copy of d; the rest are the nontrivial eigenvalues.
  double second = 0;
  for (std::size_t i = 1; i < report.eigenvalues.size(); ++i) {
    second = std::max(second, std::abs(report.eigenvalues[i]));
  }
  report.gamma_hat = d > 0 ? second / d : 0.0;
  return report;
}

std::vector<Vertex> common_neighbors(const RegularGraph& g, Vertex u, Vertex v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::uint32_t max_common_neighbors(const RegularGraph& g) {
  std::uint32_t best = 0;
  const Vertex m = g.vertex_count();
  for (Vertex u = 0; u < m; ++u) {
    auto a = g.neighbors(u);
    for (Vertex v = u + 1; v < m; ++v) {
      auto b = g.neighbors(v);
      std::uint32_t count = 0;
      for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count;
          ++i;
          ++j;
        }
      }
      best = std::max(best, count);
    }
  }
  return best;
}

bool check_affine_like(std::uint64_t m, std::uint64_t d, const Rational& gamma_squared) {
  if (m < 1 || d < 1 || d > m) throw ValidationError("check_affine_like: need 1 <= d <= m");
  if (gamma_squared <= 0 || gamma_squared >= 1) {
    throw ValidationError("check_affine_like: need 0 < gamma < 1");
  }
  Rational lhs(2 * d + 4);
  Rational dd(d);
  Rational rhs = dd * dd * (2 * gamma_squared + 4 * (1 - gamma_squared) / Rational(m));
  return lhs > rhs;
}

bool check_affine_like(std::uint64_t m, std::uint64_t d, double gamma) {
  Rational g = exact_rational(gamma);
  return check_affine_like(m, d, Rational(g * g));
}

double expansion_slack(const RegularGraph& g, std::span<const Vertex> a, double gamma) {
  if (a.empty()) throw ValidationError("expansion_slack: empty set");
  std::vector<char> in_image(g.vertex_count(), 0);
  std::size_t image = 0;
  for (Vertex v : a) {
    for (Vertex u : g.neighbors(v)) {
      if (!in_image[u]) {
        in_image[u] = 1;
        ++image;
      }
    }
  }
  const double m = g.vertex_count();
  const double size = static_cast<double>(a.size());
  const double g2 = gamma * gamma;
  return static_cast<double>(image) / size - 1.0 / (g2 + (1.0 - g2) * size / m);
}

ExpansionReport check_vertex_expansion(const RegularGraph& g, double gamma, std::size_t samples,
                                       std::uint64_t seed) {
  const std::uint32_t m = g.vertex_count();
  struct Sample {
    double slack;
    std::vector<Vertex> set;
  };
  std::vector<Sample> results(samples);
  parallel_for(samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::derive(seed, i);
      auto size = static_cast<std::uint32_t>(std::floor(std::exp(rng.uniform01() * std::log(m + 1.0))));
      size = std::clamp<std::uint32_t>(size, 1, m);
      auto set = rng.subset(m, size);
      results[i] = {expansion_slack(g, set, gamma), std::move(set)};
    }
  });

  ExpansionReport report;
  report.samples = samples;
  report.min_slack = samples ? results[0].slack : 0.0;
  report.min_slack_size = samples ? results[0].set.size() : 0;
  for (auto& r : results) {
    if (r.slack < report.min_slack) {
      report.min_slack = r.slack;
      report.min_slack_size = r.set.size();
    }
    // Full-set equality holds up to rounding.
    if (r.slack < -1e-9 && !report.counterexample) report.counterexample = r.set;
  }
  return report;
}

void write_graph(std::ostream& out, const RegularGraph& g) {
  out << "GRAPH " << g.vertex_count() << ' ' << g.degree() << '\n';
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << v << ':';
    for (Vertex u : g.neighbors(v)) out << ' ' << u;
    out << '\n';
  }
  if (g.has_labels()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      out << "LABEL " << v << ' ' << g.labels()[v].first << ' ' << g.labels()[v].second << '\n';
    }
  }
}

RegularGraph read_graph(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("graph: empty input");
  auto header = split_ws(line);
  if (header.size() != 3 || header[0] != "GRAPH") throw ValidationError("graph: bad header");
  auto m = parse_u64(header[1], "vertex count");
  auto d = parse_u64(header[2], "degree");
  std::vector<std::vector<Vertex>> adj(m);
  for (std::uint64_t v = 0; v < m; ++v) {
    if (!next_content_line(in, line)) throw ValidationError("graph: truncated adjacency");
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] != std::to_string(v) + ":") {
      throw ValidationError("graph: expected adjacency line for vertex " + std::to_string(v));
    }
    if (tok.size() != d + 1) throw ValidationError("graph: wrong degree on line " + tok[0]);
    for (std::size_t i = 1; i < tok.size(); ++i) {
      adj[v].push_back(static_cast<Vertex>(parse_u64(tok[i], "neighbour")));
    }
  }
  std::vector<VertexLabel> labels;
  while (next_content_line(in, line)) {
    auto tok = split_ws(line);
    if (tok.size() != 4 || tok[0] != "LABEL") throw ValidationError("graph: bad label line");
    if (labels.empty()) labels.resize(m);
    auto v = parse_u64(tok[1], "label vertex");
    if (v >= m) throw ValidationError("graph: label vertex out of range");
    labels[v] = {static_cast<std::uint32_t>(parse_u64(tok[2], "label x")),
                 static_cast<std::uint32_t>(parse_u64(tok[3], "label y"))};
  }
  return RegularGraph(std::move(adj), std::move(labels));
}

}  // namespace gadgetforge
