#include <gtest/gtest.h>

#include <sstream>

#include "testspace/error.hpp"
#include "testspace/graph.hpp"
#include "testspace/metric.hpp"

using namespace testspace;

namespace {

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

// Floyd-Warshall on the adjacency matrix.
std::vector<std::vector<int>> floyd(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j : g.neighbors(i)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

class LineMetric final : public FiniteMetric {
 public:
  explicit LineMetric(std::vector<double> x) : x_(std::move(x)) {}
  std::size_t size() const override { return x_.size(); }
  double distance(std::size_t i, std::size_t j) const override { return std::abs(x_[i] - x_[j]); }

 private:
  std::vector<double> x_;
};

}  // namespace

TEST(Graph, PathEndToEnd) {
  EXPECT_EQ(bfs_distances(path(4), 0)[3], 3);
}

TEST(Graph, CompleteAllOnes) {
  const auto d = bfs_apsp(complete(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(d(i, j), i == j ? 0 : 1);
}

TEST(Graph, HexagonOpposite) {
  const Graph c6 = cycle(6);
  EXPECT_EQ(floyd(c6)[0][3], 3);
  EXPECT_EQ(bfs_apsp(c6)(0, 3), 3);
}

TEST(Graph, ApspMatchesFloydOnRandomGraphs) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(20);
    Graph g = path(n);
    for (int k = 0; k < 15; ++k) {
      const std::size_t a = rng.index(n), b = rng.index(n);
      if (a != b) g.add_edge(a, b);
    }
    const auto want = floyd(g);
    const auto got = bfs_apsp(g, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(got(i, j), want[i][j]);
  }
}

TEST(Graph, Degrees) {
  EXPECT_EQ(max_degree(complete(4)), 3u);
  Graph star(6);
  for (std::size_t i = 1; i < 6; ++i) star.add_edge(0, i);
  EXPECT_EQ(max_degree(star), 5u);
}

TEST(Graph, Connectivity) {
  EXPECT_FALSE(is_connected(Graph::from_edges(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_connected(path(5)));
  EXPECT_THROW(bfs_apsp(Graph::from_edges(4, {{0, 1}, {2, 3}})), ValidationError);
}

TEST(Graph, FromEdgesRejectsBadInput) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), ValidationError);
  EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), ValidationError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), ValidationError);
}

TEST(Graph, EdgesLexicographic) {
  const Graph g = Graph::from_edges(4, {{3, 2}, {0, 3}, {1, 0}});
  const std::vector<std::pair<std::size_t, std::size_t>> want{{0, 1}, {0, 3}, {2, 3}};
  EXPECT_EQ(g.edges(), want);
}

TEST(Graph, DotExport) {
  const std::string dot = to_dot(path(3));
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
  EXPECT_NE(dot.find("1 -- 2"), std::string::npos);
}

TEST(Audit, IdentityHasDistortionOne) {
  const Graph g = cycle(7);
  const GraphMetric m(g);
  const auto r = audit(m, m, identity_map(7));
  EXPECT_DOUBLE_EQ(r.distortion, 1.0);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.pairs_checked, 21u);
}

TEST(Audit, ScalingIsScaleInvariant) {
  const Graph g = path(5);
  const GraphMetric m(g);
  const ScaledMetric scaled(m, 7.0);
  const auto r = audit(m, scaled, identity_map(5));
  EXPECT_DOUBLE_EQ(r.lip_forward, 7.0);
  EXPECT_DOUBLE_EQ(r.lip_inverse, 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(r.distortion, 1.0);
}

TEST(Audit, PathOnLine) {
  // Pairs: (0,1) 1 -> 1, (1,2) 1 -> 0.5, (0,2) 2 -> 1.5.
  const Graph p3 = path(3);
  const auto r = audit(GraphMetric(p3), LineMetric({0, 1, 1.5}), identity_map(3));
  EXPECT_DOUBLE_EQ(r.lip_forward, 1.0);
  EXPECT_DOUBLE_EQ(r.lip_inverse, 2.0);
  EXPECT_DOUBLE_EQ(r.distortion, 2.0);
  EXPECT_EQ(r.witness_inverse, (IndexPair{1, 2}));
}

TEST(Audit, SampledRowsAreSeeded) {
  const Graph g = cycle(50);
  const GraphMetric m(g);
  AuditOptions opt;
  opt.exhaustive_cap = 10;
  opt.sample_sources = 5;
  opt.seed = 3;
  const auto a = audit(m, ScaledMetric(m, 2.0), identity_map(50), opt);
  const auto b = audit(m, ScaledMetric(m, 2.0), identity_map(50), opt);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_DOUBLE_EQ(a.lip_forward, 2.0);
  EXPECT_EQ(a.pairs_checked, b.pairs_checked);
  EXPECT_EQ(select_audit_rows(50, opt), select_audit_rows(50, opt));
  EXPECT_EQ(select_audit_rows(50, opt).size(), 5u);
}

TEST(Audit, RejectsNonInjectiveMap) {
  const Graph g = path(3);
  const GraphMetric m(g);
  EXPECT_THROW(audit(m, m, {0, 0, 1}), ValidationError);
}

TEST(Audit, PairCsv) {
  const Graph g = path(3);
  const GraphMetric m(g);
  std::ostringstream out;
  write_pair_csv(out, m, ScaledMetric(m, 2.0), identity_map(3));
  const std::string csv = out.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("0,2,2,4,2"), std::string::npos);
}
