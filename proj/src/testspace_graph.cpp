#include "testspace/testspace_graph.hpp"

#include <cmath>
#include <memory>

#include "testspace/error.hpp"
#include "testspace/spatial_index.hpp"

namespace testspace {

TestspaceGraph build_testspace_graph(const NormedSpace& space, double delta,
                                     double r, const NetOptions& options) {
  return build_testspace_graph(build_net(space, delta, r, options));
}

TestspaceGraph build_testspace_graph(Net net) {
  const double threshold = 3.0 * net.rho;
  const std::size_t count = net.points.size();
  TestspaceGraph tg{std::move(net), Graph(count), threshold};
  const auto& pts = tg.net.points;
  const auto& space = tg.net.space;

  const double limit = tg.edge_threshold * (1.0 + kThresholdSlack);
  GridIndex index(space.dimension(), space.box_factor() * tg.edge_threshold);
  for (std::size_t i = 0; i < pts.size(); ++i) index.insert(i, pts[i]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    index.visit_box(pts[i], space.box_factor() * limit, [&](std::size_t j) {
      if (j > i && space.distance(pts[i], pts[j]) <= limit) tg.graph.add_edge(i, j);
    });
  }
  if (!is_connected(tg.graph)) {
    throw ConstructionError(
        "test-space graph is disconnected; the net does not cover rB(X)");
  }
  return tg;
}

bool verify_edge_rule(const TestspaceGraph& tg) {
  const auto& pts = tg.coords();
  const double limit = tg.edge_threshold * (1.0 + kThresholdSlack);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const bool close = tg.space().distance(pts[i], pts[j]) <= limit;
      if (close != tg.graph.has_edge(i, j)) return false;
    }
  }
  return true;
}

PathBoundReport verify_path_bound(const TestspaceGraph& tg) {
  return verify_path_bound(tg, bfs_apsp(tg.graph));
}

PathBoundReport verify_path_bound(const TestspaceGraph& tg,
                                  const DistanceMatrix& hops) {
  PathBoundReport report;
  const auto& pts = tg.coords();
  const double limit = tg.edge_threshold * (1.0 + kThresholdSlack);
  const double rho = tg.net.rho;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++report.pairs_checked;
      const double d = tg.space().distance(pts[i], pts[j]);
      const long hop = hops(i, j);
      bool ok = true;
      if (d <= limit) {
        ok = hop == 1;
      } else {
        const long bound =
            static_cast<long>(std::floor(d / rho * (1.0 + kThresholdSlack)));
        ok = hop <= bound;
        if (!report.tightest || bound - hop < report.tightest_slack) {
          report.tightest = IndexPair{i, j};
          report.tightest_slack = bound - hop;
        }
      }
      if (!ok && report.ok) {
        report.ok = false;
        report.violation = IndexPair{i, j};
      }
    }
  }
  return report;
}

IdentityAudit audit_identity_embedding(const TestspaceGraph& tg,
                                       const AuditOptions& options) {
  IdentityAudit out;
  auto table = std::make_shared<const DistanceMatrix>(bfs_apsp(tg.graph, options.threads));
  const GraphMetric source(tg.graph, table);
  const NormMetric target(tg.space(), tg.coords());
  out.report = audit(source, target, identity_map(tg.coords().size()), options);
  const double rho = tg.net.rho;
  const double delta = tg.net.delta;
  out.forward_bound = 3.0 * rho;
  out.inverse_bound = 1.0 / delta;
  out.distortion_bound = 3.0 * rho / delta;
  const double slack = 1.0 + kThresholdSlack;
  out.within_bounds = out.report.lip_forward <= out.forward_bound * slack &&
                      out.report.lip_inverse <= out.inverse_bound * slack &&
                      out.report.distortion <= out.distortion_bound * slack;
  return out;
}

}  // namespace testspace
