#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "testspace/graph.hpp"
#include "testspace/metric.hpp"
#include "testspace/normed_space.hpp"

namespace testspace {

using Edge = std::pair<std::size_t, std::size_t>;

// MG: every base edge replaced by a path of M unit edges.
//
// Vertex ids: base vertices keep 0..n-1; interior vertex `step` (1..M-1) of
// edge k (lexicographic order, counted from the lower endpoint) is
// n + k*(M-1) + step-1.
struct SubdividedGraph {
  Graph base;
  int M = 1;
  std::vector<Edge> edges;
  Graph graph;

  std::size_t original_count() const noexcept { return base.vertex_count(); }
  // Vertex at `step` in 0..M along edge k; steps 0 and M are the endpoints.
  std::size_t vertex_at(std::size_t edge, int step) const;
};

SubdividedGraph subdivide(const Graph& g, int M);

enum class GadgetRole { kShort, kLong };

struct GadgetVertex {
  GadgetRole role = GadgetRole::kShort;
  // Base vertex owning the short path; for long vertices the lower endpoint
  // of the base edge.
  std::size_t base_vertex = 0;
  // 1-based long-path label (= 1 + lexicographic index of the base edge).
  std::size_t label = 1;
  // 0 on short paths; 1..M-1 along a long path from its lower endpoint.
  int step = 0;
  // Corresponding vertex of the subdivision MG.
  std::size_t mg_vertex = 0;
};

// The degree-3 graph H. Each base vertex u owns a short path of e vertices
// labeled 1..e; long path i (base edge {a, b}, a < b) joins the label-i
// vertices of the short paths of a and b through M-1 interior vertices.
//
// Vertex ids: short(u, i) = u*e + i-1, then long interiors
// n*e + (i-1)*(M-1) + step-1.
struct GadgetGraph {
  Graph base;
  int M = 1;
  std::vector<Edge> edge_order;
  Graph graph;
  std::vector<GadgetVertex> vertices;
  std::size_t psi_anchor = 1;

  std::size_t edge_count() const noexcept { return edge_order.size(); }
  std::size_t short_vertex(std::size_t u, std::size_t label) const;
  // Vertex at `step` in 0..M on long path `label`; the ends are short-path
  // vertices.
  std::size_t long_vertex(std::size_t label, int step) const;
};

// Requires g connected with at least one edge and 1 <= psi_anchor <= e(g).
GadgetGraph build_gadget(const Graph& g, int M, std::size_t psi_anchor = 1);

// u -> label-psi_anchor vertex of the short path of u.
std::vector<std::size_t> psi(const GadgetGraph& h);

struct PsiAudit {
  DistortionReport report;
  double lip_bound = 0.0;      // 2e + M
  double inverse_bound = 0.0;  // 1 / M
  // First pair (lexicographic) breaking M*d_G <= d_H <= (2e+M)*d_G.
  std::optional<IndexPair> violation;
  bool ok() const { return !violation.has_value(); }
};

// Exhaustive over all pairs of base vertices; one BFS in H per base vertex.
PsiAudit audit_psi(const GadgetGraph& h, unsigned threads = 0);

struct PhiMap {
  NormedSpace space;  // X (+)_1 R
  std::vector<Vector> points;  // indexed by H vertex
  // max over MG edges of |phi0(a) - phi0(b)| before normalization.
  double phi0_edge_lip = 0.0;
  // phi0 was divided by this, so adjacent MG vertices land within 1.
  double normalization = 1.0;
  std::vector<Vector> phi0;  // normalized, indexed by MG vertex
};

// Requires M > 2e and phi0 indexed by the vertices of subdivide(base, M).
PhiMap phi(const GadgetGraph& h, const std::vector<Vector>& phi0,
           const NormedSpace& space);

struct PhiAudit {
  DistortionReport report;       // H -> X (+)_1 R
  DistortionReport phi0_report;  // MG -> X
  std::size_t case1_pairs = 0;   // d_MG(w', z') >= d_H(w, z) / 2
  std::size_t case2_pairs = 0;
  // First pair failing its case bound: |phi w - phi z| >= d_H / (2 lip0inv)
  // in case (1), > d_H / 2 in case (2).
  std::optional<IndexPair> case_violation;
  bool forward_ok = false;  // lip(phi) <= 1
  bool inverse_ok = false;  // lip(phi^-1) <= 2 lip(phi0^-1)
  bool ok() const { return forward_ok && inverse_ok && !case_violation; }
};

// `tol` is the relative slack on every ratio comparison. H and MG are each
// audited exhaustively when they fit options.exhaustive_cap, else by sampled
// rows.
PhiAudit audit_phi(const GadgetGraph& h, const PhiMap& map,
                   const AuditOptions& options = {}, double tol = 1e-9);

}  // namespace testspace
