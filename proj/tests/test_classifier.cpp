#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "testspace/classifier.hpp"
#include "testspace/error.hpp"

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
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Path: some vertex order whose consecutive pairs are exactly the edges.
bool brute_is_path(const Graph& g) {
  std::vector<std::size_t> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  if (g.edge_count() + 1 != order.size()) return false;
  do {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < order.size() && ok; ++i) ok = g.has_edge(order[i], order[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool brute_is_complete(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

TEST(Classify, FixedVerdicts) {
  EXPECT_EQ(classify(complete(4)).verdict, Verdict::kComplete);
  EXPECT_EQ(classify(path(5)).verdict, Verdict::kPath);
  const Classification c3 = classify(cycle(3));
  EXPECT_EQ(c3.verdict, Verdict::kComplete);
  EXPECT_TRUE(c3.both);
}

TEST(Classify, SquareCertificateIsTheCycle) {
  const Graph c4 = cycle(4);
  const Classification c = classify(c4);
  EXPECT_EQ(c.verdict, Verdict::kNeither);
  ASSERT_TRUE(c.certificate.has_value());
  EXPECT_EQ(c.certificate->kind, CertificateKind::kCycle);
  EXPECT_EQ(c.certificate->cycle.size(), 4u);
  EXPECT_TRUE(certificate_holds(c4, *c.certificate));
}

TEST(Classify, ClawCertificate) {
  const Graph claw = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const Classification c = classify(claw);
  EXPECT_EQ(c.verdict, Verdict::kNeither);
  ASSERT_TRUE(c.certificate.has_value());
  EXPECT_EQ(c.certificate->center, 0u);
  EXPECT_FALSE(claw.has_edge(c.certificate->u1, c.certificate->u2));
  EXPECT_TRUE(certificate_holds(claw, *c.certificate));
}

TEST(Classify, SmallCasesAreBoth) {
  EXPECT_TRUE(classify(Graph(1)).both);
  EXPECT_TRUE(classify(path(2)).both);
  EXPECT_FALSE(classify(path(3)).both);
}

TEST(Classify, RejectsEmptyAndDisconnected) {
  EXPECT_THROW(classify(Graph(0)), ValidationError);
  EXPECT_THROW(classify(Graph::from_edges(4, {{0, 1}, {2, 3}})), ValidationError);
}

TEST(Embeddability, Examples) {
  EXPECT_EQ(embeddability_verdict(path(10)), Embeddability::kPossiblyEmbeddable);
  EXPECT_EQ(embeddability_verdict(cycle(5)), Embeddability::kNotEmbeddable);
  const Graph p = petersen();
  EXPECT_EQ(max_degree(p), 3u);
  EXPECT_EQ(embeddability_verdict(p), Embeddability::kNotEmbeddable);
  const Classification c = classify(p);
  ASSERT_TRUE(c.certificate.has_value());
  EXPECT_NE(c.certificate->kind, CertificateKind::kCycle);
  EXPECT_TRUE(certificate_holds(p, *c.certificate));
}

TEST(Classify, AgreesWithBruteForceUpToSixVertices) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      Graph g(n);
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (mask >> k & 1u) g.add_edge(slots[k].first, slots[k].second);
      if (!is_connected(g)) continue;
      const bool is_path = brute_is_path(g);
      const bool is_complete = brute_is_complete(g);
      const Classification c = classify(g);
      // K3 is also the cycle C3.
      EXPECT_EQ(c.both, (is_path && is_complete) || (is_complete && n == 3));
      if (is_path && is_complete) {
        EXPECT_NE(c.verdict, Verdict::kNeither);
      } else if (is_complete) {
        EXPECT_EQ(c.verdict, Verdict::kComplete);
      } else if (is_path) {
        EXPECT_EQ(c.verdict, Verdict::kPath);
      } else {
        EXPECT_EQ(c.verdict, Verdict::kNeither);
        ASSERT_TRUE(c.certificate.has_value());
        EXPECT_TRUE(certificate_holds(g, *c.certificate));
      }
    }
  }
}

TEST(Classify, Names) {
  EXPECT_EQ(to_string(Verdict::kNeither), "Neither");
  EXPECT_EQ(to_string(CertificateKind::kDoubleMidpoint), "double_midpoint");
  EXPECT_EQ(to_string(Embeddability::kNotEmbeddable), "NotEmbeddable");
}
