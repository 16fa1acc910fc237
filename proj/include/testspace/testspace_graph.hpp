#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "testspace/graph.hpp"
#include "testspace/metric.hpp"
#include "testspace/net.hpp"

namespace testspace {

// The graph G(X, delta, r): vertices are the net points, and two vertices are
// adjacent iff their norm distance is at most edge_threshold = 3 * rho.
struct TestspaceGraph {
  Net net;
  Graph graph;
  double edge_threshold = 0.0;

  const NormedSpace& space() const noexcept { return net.space; }
  const std::vector<Vector>& coords() const noexcept { return net.points; }
};

// Throws ConstructionError if the result is disconnected; the covering
// property makes that impossible, so it signals a bug upstream.
TestspaceGraph build_testspace_graph(const NormedSpace& space, double delta,
                                     double r, const NetOptions& options = {});
TestspaceGraph build_testspace_graph(Net net);

// Re-checks "edge iff |v_i - v_j| <= threshold" on every pair.
bool verify_edge_rule(const TestspaceGraph& tg);

struct PathBoundReport {
  bool ok = true;
  // First pair (lexicographic) violating the bound.
  std::optional<IndexPair> violation;
  // Pair minimizing floor(|u - v| / rho) - d_G(u, v) among far pairs.
  std::optional<IndexPair> tightest;
  long tightest_slack = 0;
  std::size_t pairs_checked = 0;
};

// For every pair: d_G = 1 when 0 < |u - v| <= edge_threshold, and
// d_G <= floor(|u - v| / rho) beyond it.
PathBoundReport verify_path_bound(const TestspaceGraph& tg,
                                  const DistanceMatrix& hops);
PathBoundReport verify_path_bound(const TestspaceGraph& tg);

struct IdentityAudit {
  DistortionReport report;
  // 3 * rho / delta; equals 3 whenever the net covers at scale delta.
  double distortion_bound = 0.0;
  double forward_bound = 0.0;  // 3 * rho
  double inverse_bound = 0.0;  // 1 / delta, or 1 / rho when rho = delta
  bool within_bounds = false;
};

// Audits the natural embedding (V, d_G) -> (V, |.|).
IdentityAudit audit_identity_embedding(const TestspaceGraph& tg,
                                       const AuditOptions& options = {});

}  // namespace testspace
