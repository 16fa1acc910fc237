#include "testspace/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "testspace/error.hpp"
#include "testspace/parallel.hpp"

namespace testspace {

std::size_t SubdividedGraph::vertex_at(std::size_t edge, int step) const {
  if (edge >= edges.size() || step < 0 || step > M) {
    throw ValidationError("subdivision vertex out of range");
  }
  if (step == 0) return edges[edge].first;
  if (step == M) return edges[edge].second;
  return original_count() + edge * static_cast<std::size_t>(M - 1) +
         static_cast<std::size_t>(step - 1);
}

SubdividedGraph subdivide(const Graph& g, int M) {
  if (M < 1) throw ValidationError("M must be >= 1", "M");
  SubdividedGraph out;
  out.base = g;
  out.M = M;
  out.edges = g.edges();
  const std::size_t interior = static_cast<std::size_t>(M - 1);
  out.graph = Graph(g.vertex_count() + interior * out.edges.size());
  for (std::size_t k = 0; k < out.edges.size(); ++k) {
    for (int step = 0; step < M; ++step) {
      out.graph.add_edge(out.vertex_at(k, step), out.vertex_at(k, step + 1));
    }
  }
  return out;
}

std::size_t GadgetGraph::short_vertex(std::size_t u, std::size_t label) const {
  if (u >= base.vertex_count() || label < 1 || label > edge_count()) {
    throw ValidationError("short-path vertex out of range");
  }
  return u * edge_count() + (label - 1);
}

std::size_t GadgetGraph::long_vertex(std::size_t label, int step) const {
  if (label < 1 || label > edge_count() || step < 0 || step > M) {
    throw ValidationError("long-path vertex out of range");
  }
  const auto [a, b] = edge_order[label - 1];
  if (step == 0) return short_vertex(a, label);
  if (step == M) return short_vertex(b, label);
  return base.vertex_count() * edge_count() +
         (label - 1) * static_cast<std::size_t>(M - 1) +
         static_cast<std::size_t>(step - 1);
}

GadgetGraph build_gadget(const Graph& g, int M, std::size_t psi_anchor) {
  if (M < 1) throw ValidationError("M must be >= 1", "M");
  if (g.edge_count() == 0) throw ValidationError("graph has no edges", "edges");
  if (!is_connected(g)) throw ValidationError("graph is disconnected", "edges");
  const std::size_t n = g.vertex_count();
  const std::size_t e = g.edge_count();
  if (psi_anchor < 1 || psi_anchor > e) {
    throw ValidationError("psi anchor must lie in 1..e(G)", "psi_anchor");
  }

  GadgetGraph h;
  h.base = g;
  h.M = M;
  h.edge_order = g.edges();
  h.psi_anchor = psi_anchor;
  const std::size_t interior = static_cast<std::size_t>(M - 1);
  h.graph = Graph(n * e + e * interior);
  h.vertices.resize(h.graph.vertex_count());

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t label = 1; label <= e; ++label) {
      h.vertices[h.short_vertex(u, label)] =
          GadgetVertex{GadgetRole::kShort, u, label, 0, u};
      if (label > 1) {
        h.graph.add_edge(h.short_vertex(u, label - 1), h.short_vertex(u, label));
      }
    }
  }
  // Indices agree with subdivide(): edge k carries label k + 1.
  const std::size_t mg_base = n;
  for (std::size_t label = 1; label <= e; ++label) {
    const std::size_t a = h.edge_order[label - 1].first;
    for (int step = 1; step < M; ++step) {
      const std::size_t mg = mg_base + (label - 1) * interior +
                             static_cast<std::size_t>(step - 1);
      h.vertices[h.long_vertex(label, step)] =
          GadgetVertex{GadgetRole::kLong, a, label, step, mg};
    }
    for (int step = 0; step < M; ++step) {
      h.graph.add_edge(h.long_vertex(label, step), h.long_vertex(label, step + 1));
    }
  }
  if (max_degree(h.graph) > 3) {
    throw ConstructionError("gadget graph has a vertex of degree above 3");
  }
  return h;
}

std::vector<std::size_t> psi(const GadgetGraph& h) {
  std::vector<std::size_t> out(h.base.vertex_count());
  for (std::size_t u = 0; u < out.size(); ++u) {
    out[u] = h.short_vertex(u, h.psi_anchor);
  }
  return out;
}

PsiAudit audit_psi(const GadgetGraph& h, unsigned threads) {
  const std::size_t n = h.base.vertex_count();
  if (n < 2) throw ValidationError("psi audit needs at least two base vertices");
  PsiAudit out;
  const double e = static_cast<double>(h.edge_count());
  out.lip_bound = 2.0 * e + h.M;
  out.inverse_bound = 1.0 / h.M;

  const auto map = psi(h);
  auto table = std::make_shared<const DistanceMatrix>(bfs_apsp(h.base, threads));
  const GraphMetric source(h.base, table);
  const GraphMetric target(h.graph);
  AuditOptions options;
  options.exhaustive_cap = n;
  options.threads = threads;
  out.report = audit(source, target, map, options);

  std::vector<std::vector<std::int32_t>> rows(n);
  parallel_for(n, threads, [&](std::size_t u) {
    rows[u] = bfs_distances(h.graph, map[u]);
  });
  const long lip = 2 * static_cast<long>(h.edge_count()) + h.M;
  for (std::size_t u = 0; u < n && !out.violation; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const long dg = (*table)(u, v);
      const long dh = rows[u][map[v]];
      if (dh < h.M * dg || dh > lip * dg) {
        out.violation = IndexPair{u, v};
        break;
      }
    }
  }
  return out;
}

PhiMap phi(const GadgetGraph& h, const std::vector<Vector>& phi0,
           const NormedSpace& space) {
  const std::size_t e = h.edge_count();
  if (h.M <= static_cast<int>(2 * e)) {
    throw ValidationError("M must exceed 2 e(G) = " + std::to_string(2 * e), "M");
  }
  const SubdividedGraph mg = subdivide(h.base, h.M);
  if (phi0.size() != mg.graph.vertex_count()) {
    throw ValidationError("phi0 must cover all " +
                              std::to_string(mg.graph.vertex_count()) +
                              " subdivision vertices",
                          "phi0");
  }
  for (const auto& p : phi0) {
    if (p.size() != space.dimension() || !p.all_finite()) {
      throw ValidationError("phi0 point has wrong dimension or is not finite", "phi0");
    }
  }

  PhiMap out{direct_sum_l1(space, NormedSpace::lp(1.0, 1)), {}, 0.0, 1.0, phi0};
  for (const auto& [a, b] : mg.graph.edges()) {
    out.phi0_edge_lip = std::max(out.phi0_edge_lip, space.distance(phi0[a], phi0[b]));
  }
  if (!(out.phi0_edge_lip > 0.0)) {
    throw ValidationError("phi0 collapses every edge of MG", "phi0");
  }
  out.normalization = out.phi0_edge_lip;
  for (auto& p : out.phi0) p *= 1.0 / out.normalization;
  out.points.reserve(h.vertices.size());
  for (const auto& hv : h.vertices) {
    const Vector& x = out.phi0[hv.mg_vertex];
    Vector y(space.dimension() + 1);
    std::copy(x.begin(), x.end(), y.begin());
    y[space.dimension()] = static_cast<double>(hv.label);
    out.points.push_back(std::move(y));
  }
  return out;
}

namespace {

struct PhiRow {
  std::size_t case1 = 0;
  std::size_t case2 = 0;
  std::optional<IndexPair> violation;
};

}  // namespace

PhiAudit audit_phi(const GadgetGraph& h, const PhiMap& map,
                   const AuditOptions& options, double tol) {
  if (map.points.size() != h.graph.vertex_count()) {
    throw ValidationError("phi map does not match the gadget graph", "points");
  }
  PhiAudit out;
  const SubdividedGraph mg = subdivide(h.base, h.M);
  // Full APSP on MG only when it fits the exhaustive budget; otherwise rows
  // come from BFS and the phi0 audit is sampled like the H audit.
  const bool mg_exhaustive = mg.graph.vertex_count() <= options.exhaustive_cap;
  std::shared_ptr<const DistanceMatrix> mg_table;
  if (mg_exhaustive) {
    mg_table = std::make_shared<const DistanceMatrix>(bfs_apsp(mg.graph, options.threads));
  }
  const GraphMetric mg_metric =
      mg_table ? GraphMetric(mg.graph, mg_table) : GraphMetric(mg.graph);
  const NormedSpace& x_space = map.space.first();
  out.phi0_report = audit(mg_metric, NormMetric(x_space, map.phi0),
                          identity_map(map.phi0.size()), options);

  const GraphMetric h_metric(h.graph);
  const NormMetric target(map.space, map.points);
  out.report = audit(h_metric, target, identity_map(map.points.size()), options);

  const double lip0_inv = out.phi0_report.lip_inverse;
  const auto rows = select_audit_rows(h.graph.vertex_count(), options);
  const bool exhaustive = rows.size() == h.graph.vertex_count();
  std::vector<PhiRow> results(rows.size());
  parallel_for(rows.size(), options.threads, [&](std::size_t k) {
    const std::size_t w = rows[k];
    const auto dh = bfs_distances(h.graph, w);
    const std::size_t w_mg = h.vertices[w].mg_vertex;
    std::vector<std::int32_t> mg_row;
    if (!mg_table) mg_row = bfs_distances(mg.graph, w_mg);
    PhiRow& res = results[k];
    for (std::size_t z = exhaustive ? w + 1 : 0; z < dh.size(); ++z) {
      if (z == w) continue;
      const double d_h = dh[z];
      const std::size_t z_mg = h.vertices[z].mg_vertex;
      const double d_mg = mg_table ? (*mg_table)(w_mg, z_mg) : mg_row[z_mg];
      const double d_x = map.space.distance(map.points[w], map.points[z]);
      bool ok;
      if (d_mg >= 0.5 * d_h) {
        ++res.case1;
        ok = d_x * (1.0 + tol) >= 0.5 * d_h / lip0_inv;
      } else {
        ++res.case2;
        ok = d_x * (1.0 + tol) > 0.5 * d_h;
      }
      if (!ok && !res.violation) {
        res.violation = w < z ? IndexPair{w, z} : IndexPair{z, w};
      }
    }
  });
  for (const auto& r : results) {
    out.case1_pairs += r.case1;
    out.case2_pairs += r.case2;
    if (r.violation && !out.case_violation) out.case_violation = r.violation;
  }
  out.forward_ok = out.report.lip_forward <= 1.0 + tol;
  out.inverse_ok = out.report.lip_inverse <= 2.0 * lip0_inv * (1.0 + tol);
  return out;
}

}  // namespace testspace
