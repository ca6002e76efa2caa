#include "gadgetforge/errors.hpp"
#include "gadgetforge/graphs.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace gadgetforge;

namespace {

using Adj = std::vector<std::vector<Vertex>>;

RegularGraph cycle4() { return RegularGraph(Adj{{1, 3}, {0, 2}, {1, 3}, {0, 2}}); }

RegularGraph complete4() { return RegularGraph(Adj{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}); }

}  // namespace

TEST(RegularGraph, ValidatesStructure) {
  EXPECT_THROW(RegularGraph(Adj{{1}, {}}), ValidationError);         // asymmetric
  EXPECT_THROW(RegularGraph(Adj{{1}, {0}, {0}}), ValidationError);   // asymmetric, irregular
  EXPECT_THROW(RegularGraph(Adj{{1, 1}, {0, 0}}), ValidationError);  // duplicate
  EXPECT_THROW(RegularGraph(Adj{{1, 2}, {0}, {0}}), ValidationError);
  EXPECT_NO_THROW(RegularGraph(Adj{{1}, {0}}));
}

TEST(AffinePlane, MatchesRelation) {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    auto g = build_ap(q);
    auto a = oracle::ap_matrix(q);
    ASSERT_EQ(g.vertex_count(), q * q);
    EXPECT_EQ(g.degree(), q);
    for (Vertex u = 0; u < q * q; ++u)
      for (Vertex v = 0; v < q * q; ++v) EXPECT_EQ(g.adjacent(u, v), a[u][v] == 1);
  }
  EXPECT_THROW(build_ap(9), ValidationError);
}

TEST(AffinePlane, SelfLoopsAtQ3) {
  auto g = build_ap(3);
  std::vector<Vertex> loops;
  for (Vertex v = 0; v < 9; ++v)
    if (g.has_self_loop(v)) loops.push_back(v);
  EXPECT_EQ(loops, (std::vector<Vertex>{ap_vertex(3, 0, 0), ap_vertex(3, 1, 2), ap_vertex(3, 2, 2)}));
}

TEST(Spectral, CompleteGraph) {
  auto rep = spectral_report(complete4());
  ASSERT_EQ(rep.eigenvalues.size(), 4u);
  EXPECT_NEAR(rep.eigenvalues[0], 3, 1e-9);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(rep.eigenvalues[i], -1, 1e-9);
  EXPECT_EQ(rep.multiplicity_of_d, 1);
  EXPECT_NEAR(rep.gamma_hat, 1.0 / 3, 1e-9);
}

TEST(Spectral, JacobiAgreesWithEigen) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    auto ours = spectral_report(build_ap(q)).eigenvalues;
    auto ref = oracle::eigenvalues_desc(oracle::ap_matrix(q));
    ASSERT_EQ(ours.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(ours[i], ref[i], 1e-7);
  }
}

TEST(Spectral, ApGap) {
  for (std::uint32_t q : {3u, 5u}) {
    auto rep = spectral_report(build_ap(q));
    EXPECT_LE(rep.gamma_hat, 1 / std::sqrt(double(q)) + 1e-6);
    EXPECT_EQ(rep.multiplicity_of_d, 1);
  }
}

TEST(Spectral, RejectsAsymmetricMatrix) {
  EXPECT_THROW(jacobi_eigenvalues({0, 1, 0, 0}, 2, 1e-9), InvariantViolation);
}

TEST(CommonNeighbors, Examples) {
  EXPECT_EQ(max_common_neighbors(cycle4()), 2u);
  EXPECT_EQ(max_common_neighbors(RegularGraph(Adj{{1}, {0}})), 0u);
  for (std::uint32_t q : {3u, 5u, 7u}) EXPECT_EQ(max_common_neighbors(build_ap(q)), 1u);
}

TEST(AffineLike, Examples) {
  // (q^4, q^2, 1/q) with q = 5.
  EXPECT_TRUE(check_affine_like(625, 25, Rational(1, 25)));
  EXPECT_TRUE(check_affine_like(4, 1, 0.5));
  EXPECT_FALSE(check_affine_like(10, 10, 0.9));
  EXPECT_THROW(check_affine_like(4, 5, 0.5), ValidationError);
  EXPECT_THROW(check_affine_like(4, 1, 1.5), ValidationError);
}

TEST(AffineLike, MonotoneInGamma) {
  for (std::uint64_t m = 1; m <= 40; m += 3) {
    for (std::uint64_t d = 1; d <= m; ++d) {
      bool prev = true;
      for (int g = 1; g < 20; ++g) {  // gamma increasing
        bool now = check_affine_like(m, d, Rational(g, 20) * Rational(g, 20));
        EXPECT_FALSE(now && !prev) << m << " " << d << " " << g;
        prev = now;
      }
    }
  }
}

TEST(Expansion, SingleVertexAndFullSet) {
  auto g = build_ap(3);
  const double gamma = 1 / std::sqrt(3.0);
  Vertex one[] = {0};
  EXPECT_NEAR(expansion_slack(g, one, gamma), 3 - 1 / (1.0 / 3 + (2.0 / 3) / 9), 1e-12);
  std::vector<Vertex> all(9);
  for (Vertex v = 0; v < 9; ++v) all[v] = v;
  EXPECT_NEAR(expansion_slack(g, all, gamma), 0, 1e-12);
}

TEST(Expansion, ApPassesAndUnderestimateIsCaught) {
  auto g = build_ap(5);
  EXPECT_TRUE(check_vertex_expansion(g, 1 / std::sqrt(5.0), 500, 7).passed());
  // Pretending the graph is a near-perfect expander must produce a counterexample.
  EXPECT_FALSE(check_vertex_expansion(g, 0.01, 500, 7).passed());
}

TEST(GraphIo, RoundTrip) {
  auto g = build_ap(5);
  std::stringstream ss;
  write_graph(ss, g);
  EXPECT_EQ(read_graph(ss), g);
  std::stringstream bad("GRAPH 2 1\n0: 1\n1: 1\n");
  EXPECT_THROW(read_graph(bad), ValidationError);
}
