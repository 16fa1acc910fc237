#include <gtest/gtest.h>

#include <cmath>

#include "testspace/error.hpp"
#include "testspace/testspace_graph.hpp"

using namespace testspace;

namespace {

std::size_t index_of(const TestspaceGraph& tg, const Vector& p) {
  for (std::size_t i = 0; i < tg.coords().size(); ++i) {
    if (tg.coords()[i] == p) return i;
  }
  ADD_FAILURE() << "point not in net";
  return 0;
}

}  // namespace

TEST(TestspaceGraph, RealLine) {
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(2, 1), 1.0, 2.0);
  ASSERT_EQ(tg.graph.vertex_count(), 5u);
  EXPECT_DOUBLE_EQ(tg.net.rho, 1.0);
  EXPECT_DOUBLE_EQ(tg.edge_threshold, 3.0);
  const auto hops = bfs_apsp(tg.graph);
  const std::size_t a = index_of(tg, Vector{-2}), b = index_of(tg, Vector{2});
  EXPECT_FALSE(tg.graph.has_edge(a, b));
  EXPECT_TRUE(tg.graph.has_edge(a, index_of(tg, Vector{1})));
  EXPECT_EQ(hops(a, b), 2);
  // |(-2) - 2| = 4, floor(4 / rho) = 4 >= 2.
  EXPECT_TRUE(verify_path_bound(tg, hops).ok);
}

TEST(TestspaceGraph, SinglePoint) {
  Net net{NormedSpace::lp(2, 2), 1.0, 0.5, 4, {Vector(2)}, 0.5, 1.0};
  const TestspaceGraph tg = build_testspace_graph(std::move(net));
  EXPECT_EQ(tg.graph.vertex_count(), 1u);
  EXPECT_EQ(tg.graph.edge_count(), 0u);
}

TEST(TestspaceGraph, TwoPointsHaveDistortionOne) {
  Net net{NormedSpace::lp(2, 1), 1.0, 1.5, 4, {Vector{0}, Vector{1}}, 1.0, 1.0};
  const TestspaceGraph tg = build_testspace_graph(std::move(net));
  EXPECT_EQ(tg.graph.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(audit_identity_embedding(tg).report.distortion, 1.0);
}

TEST(TestspaceGraph, MaxNormPlaneDegreeMatchesLatticeCount) {
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(kInfinity, 2), 1.0, 2.0);
  ASSERT_EQ(tg.graph.vertex_count(), 25u);
  // Lattice points of [-2, 2]^2 within sup distance 3 of each point.
  std::size_t want = 0;
  for (int x = -2; x <= 2; ++x) {
    for (int y = -2; y <= 2; ++y) {
      std::size_t deg = 0;
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
          if ((a != x || b != y) && std::max(std::abs(a - x), std::abs(b - y)) <= 3) ++deg;
      want = std::max(want, deg);
    }
  }
  EXPECT_EQ(max_degree(tg.graph), want);
  EXPECT_LE(max_degree(tg.graph), 48u);
}

TEST(TestspaceGraph, EdgeRuleAndConnectivity) {
  for (const char* d : {"lp:1:2", "lp:2:2", "lp:2:3", "lp:3:2"}) {
    const TestspaceGraph tg = build_testspace_graph(parse_space_descriptor(d), 1.0, 2.5);
    EXPECT_TRUE(verify_edge_rule(tg)) << d;
    EXPECT_TRUE(is_connected(tg.graph)) << d;
  }
}

TEST(TestspaceGraph, MaxNormPlaneDistortionAtMostThree) {
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(kInfinity, 2), 1.0, 2.0);
  const IdentityAudit a = audit_identity_embedding(tg);
  EXPECT_TRUE(a.report.exhaustive);
  EXPECT_LE(a.report.distortion, 3.0);
  EXPECT_LE(a.report.lip_forward, 3.0 * tg.net.rho);
  EXPECT_LE(a.report.lip_inverse, 1.0 / tg.net.rho);
  EXPECT_TRUE(a.within_bounds);
}

TEST(TestspaceGraph, PerPairBoundsAgainstOracle) {
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(1, 2), 1.0, 3.0);
  const auto hops = bfs_apsp(tg.graph);
  const auto& pts = tg.coords();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = tg.space().distance(pts[i], pts[j]);
      if (d <= 3.0 * tg.net.rho) {
        EXPECT_EQ(hops(i, j), 1);
      } else {
        EXPECT_LE(hops(i, j), std::floor(d / tg.net.rho * (1 + 1e-12)));
      }
    }
  }
  EXPECT_TRUE(verify_path_bound(tg, hops).ok);
}

TEST(TestspaceGraph, CoincidentPairHasZeroHops) {
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(2, 2), 1.0, 2.0);
  EXPECT_EQ(bfs_apsp(tg.graph)(3, 3), 0);
}
