#include <gtest/gtest.h>

#include <cmath>

#include "testspace/error.hpp"
#include "testspace/gadget.hpp"

using namespace testspace;

namespace {

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

// phi0 for a straight-line drawing of g: MG vertices evenly spaced on the
// segment of their base edge.
std::vector<Vector> straight_phi0(const SubdividedGraph& mg, const std::vector<Vector>& pos) {
  std::vector<Vector> out(mg.graph.vertex_count());
  for (std::size_t k = 0; k < mg.edges.size(); ++k) {
    const auto [a, b] = mg.edges[k];
    for (int s = 0; s <= mg.M; ++s) {
      out[mg.vertex_at(k, s)] = lerp(pos[a], pos[b], static_cast<double>(s) / mg.M);
    }
  }
  return out;
}

std::vector<Vector> triangle() {
  return {Vector{0, 0}, Vector{1, 0}, Vector{0.5, std::sqrt(3.0) / 2}};
}

}  // namespace

TEST(Subdivide, SingleEdge) {
  const SubdividedGraph mg = subdivide(complete(2), 3);
  EXPECT_EQ(mg.graph.vertex_count(), 4u);
  EXPECT_EQ(bfs_distances(mg.graph, 0)[1], 3);
}

TEST(Subdivide, TriangleDoubledIsHexagon) {
  const SubdividedGraph mg = subdivide(complete(3), 2);
  EXPECT_EQ(mg.graph.vertex_count(), 6u);
  EXPECT_EQ(mg.graph.edge_count(), 6u);
  EXPECT_EQ(max_degree(mg.graph), 2u);
  const auto base = bfs_apsp(complete(3));
  const auto d = bfs_apsp(mg.graph);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(d(i, j), 2 * base(i, j));
}

TEST(Subdivide, MOneIsIdentity) {
  const Graph g = star(4);
  EXPECT_EQ(subdivide(g, 1).graph, g);
}

TEST(Subdivide, VertexIds) {
  const SubdividedGraph mg = subdivide(complete(3), 4);
  EXPECT_EQ(mg.vertex_at(0, 0), 0u);
  EXPECT_EQ(mg.vertex_at(0, 4), 1u);
  EXPECT_EQ(mg.vertex_at(1, 1), 3u + 3u);
  EXPECT_THROW(mg.vertex_at(3, 0), ValidationError);
}

TEST(Gadget, SingleEdge) {
  const GadgetGraph h = build_gadget(complete(2), 5);
  EXPECT_EQ(h.graph.vertex_count(), 6u);
  EXPECT_EQ(max_degree(h.graph), 2u);
  EXPECT_TRUE(is_connected(h.graph));
}

TEST(Gadget, TriangleCount) {
  const GadgetGraph h = build_gadget(complete(3), 4);
  EXPECT_EQ(h.graph.vertex_count(), 3u * 3u + 3u * 3u);
  EXPECT_EQ(max_degree(h.graph), 3u);
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t i = 1; i < 3; ++i) {
      EXPECT_TRUE(h.graph.has_edge(h.short_vertex(u, i), h.short_vertex(u, i + 1)));
    }
  }
}

TEST(Gadget, ClawIsConnectedDegreeThree) {
  const GadgetGraph h = build_gadget(star(3), 3);
  EXPECT_TRUE(is_connected(h.graph));
  EXPECT_EQ(max_degree(h.graph), 3u);
}

TEST(Gadget, LongPathsJoinMatchingLabels) {
  const GadgetGraph h = build_gadget(complete(4), 6);
  for (std::size_t label = 1; label <= h.edge_count(); ++label) {
    const auto [a, b] = h.edge_order[label - 1];
    const auto d = bfs_distances(h.graph, h.short_vertex(a, label));
    EXPECT_EQ(d[h.short_vertex(b, label)], 6);
    EXPECT_EQ(h.long_vertex(label, 0), h.short_vertex(a, label));
    EXPECT_EQ(h.long_vertex(label, 6), h.short_vertex(b, label));
  }
}

TEST(Gadget, RejectsBadInput) {
  EXPECT_THROW(build_gadget(complete(3), 0), ValidationError);
  EXPECT_THROW(build_gadget(Graph::from_edges(4, {{0, 1}, {2, 3}}), 3), ValidationError);
  EXPECT_THROW(build_gadget(complete(3), 3, 4), ValidationError);
}

TEST(Psi, SingleEdgeDistance) {
  const GadgetGraph h = build_gadget(complete(2), 5);
  const auto map = psi(h);
  EXPECT_EQ(bfs_distances(h.graph, map[0])[map[1]], 5);
  const PsiAudit a = audit_psi(h);
  EXPECT_TRUE(a.ok());
  EXPECT_DOUBLE_EQ(a.lip_bound, 7.0);
}

TEST(Psi, BoundsHoldForSeveralGraphs) {
  for (int M : {3, 6, 12}) {
    for (const Graph& g : {complete(4), star(3), complete(3)}) {
      const GadgetGraph h = build_gadget(g, M);
      const PsiAudit a = audit_psi(h);
      EXPECT_TRUE(a.ok()) << "M=" << M;
      EXPECT_LE(a.report.lip_forward, a.lip_bound);
      EXPECT_LE(a.report.lip_inverse, a.inverse_bound);
    }
  }
}

TEST(Phi, RequiresLongPaths) {
  const Graph k3 = complete(3);
  const GadgetGraph h = build_gadget(k3, 6);
  const SubdividedGraph mg = subdivide(k3, 6);
  EXPECT_THROW(phi(h, straight_phi0(mg, triangle()), NormedSpace::lp(2, 2)), ValidationError);
}

TEST(Phi, RejectsDomainMismatch) {
  const GadgetGraph h = build_gadget(complete(3), 7);
  EXPECT_THROW(phi(h, {Vector{0, 0}}, NormedSpace::lp(2, 2)), ValidationError);
}

TEST(Phi, AdjacentImages) {
  const Graph k3 = complete(3);
  const int M = 7;
  const GadgetGraph h = build_gadget(k3, M);
  const NormedSpace x = NormedSpace::lp(2, 2);
  const PhiMap map = phi(h, straight_phi0(subdivide(k3, M), triangle()), x);
  EXPECT_NEAR(map.phi0_edge_lip, 1.0 / M, 1e-12);
  EXPECT_NEAR(map.normalization, 1.0 / M, 1e-12);
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t i = 1; i < 3; ++i) {
      EXPECT_DOUBLE_EQ(map.space.distance(map.points[h.short_vertex(u, i)],
                                          map.points[h.short_vertex(u, i + 1)]),
                       1.0);
    }
  }
  for (const auto& [a, b] : h.graph.edges()) {
    EXPECT_LE(map.space.distance(map.points[a], map.points[b]), 1.0 + 1e-12);
  }
}

TEST(Phi, CaseSplitBounds) {
  const Graph k3 = complete(3);
  const int M = 7;
  const GadgetGraph h = build_gadget(k3, M);
  const PhiMap map = phi(h, straight_phi0(subdivide(k3, M), triangle()), NormedSpace::lp(2, 2));
  const PhiAudit a = audit_phi(h, map);
  EXPECT_TRUE(a.report.exhaustive);
  EXPECT_TRUE(a.ok());
  EXPECT_GT(a.case1_pairs, 0u);
  EXPECT_GT(a.case2_pairs, 0u);
  EXPECT_EQ(a.case1_pairs + a.case2_pairs, a.report.pairs_checked);
  // Case (1) restated directly.
  const auto dh = bfs_apsp(h.graph);
  const auto dmg = bfs_apsp(subdivide(k3, M).graph);
  const double lip0_inv = a.phi0_report.lip_inverse;
  for (std::size_t w = 0; w < h.graph.vertex_count(); ++w) {
    for (std::size_t z = w + 1; z < h.graph.vertex_count(); ++z) {
      const double d = dh(w, z);
      if (dmg(h.vertices[w].mg_vertex, h.vertices[z].mg_vertex) >= d / 2) {
        EXPECT_GE(map.space.distance(map.points[w], map.points[z]) * (1 + 1e-9),
                  0.5 * d / lip0_inv);
      }
    }
  }
  EXPECT_LE(a.report.lip_inverse, 2 * lip0_inv * (1 + 1e-9));
}
