#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "testspace/error.hpp"
#include "testspace/gadget.hpp"
#include "testspace/graph.hpp"
#include "testspace/normed_space.hpp"
#include "testspace/rng.hpp"
#include "testspace/testspace_graph.hpp"

namespace testspace {

enum class EmbedMode { kStrict, kPractical };

struct EmbedParams {
  EmbedMode mode = EmbedMode::kPractical;
  double mu = 0.25;
  double alpha = 0.002;
  double beta = 0.02;
  double gamma = 0.001;
  // Constant in gamma <= C (beta mu)^2 / 968; only strict mode uses it.
  double C = 1.0;
  std::size_t retry_cap = 10'000;
  std::uint64_t seed = 0;
  double tol = kDefaultSearchTol;
};

// mu = 1/4, beta = mu/546, alpha = beta/1232,
// gamma = min(alpha, beta/20, C (beta mu)^2 / 968) with C = 1.
EmbedParams default_strict_params(std::size_t dimension);

// alpha = beta/10, gamma = beta/20.
EmbedParams default_practical_params(double beta = 0.02);

// Names of violated parameter constraints; empty when valid. Both modes need
// 0 < alpha, gamma < beta < mu and everything below 1/4 except mu; strict mode
// adds the explicit smallness relations.
std::vector<std::string> param_violations(const EmbedParams& params);

// Throws ValidationError naming the first violated constraint.
void validate_params(const EmbedParams& params);

std::string to_string(EmbedMode mode);
EmbedMode parse_embed_mode(const std::string& text);

// Outcome of the three avoidance conditions for one candidate breakpoint.
struct CandidateVerdict {
  bool alpha = false;
  bool beta = false;
  bool gamma = false;
  bool ok() const { return alpha && beta && gamma; }
};

// Incremental state of the construction: the test-space graph and the curves
// placed so far, with the geometry the predicates reuse.
class Placement {
 public:
  Placement(const TestspaceGraph& tg, const EmbedParams& params);
  ~Placement();
  Placement(Placement&&) noexcept;
  Placement& operator=(Placement&&) noexcept;

  // Curve [u, w] + [w, v] for the edge {u, v}, u < v.
  //
  // (alpha): the curve meets B(u, beta) in a single segment from u (so w lies
  // outside both balls and [w, v] stays out of B(u, beta)), and its crossing
  // of S(u, beta) is at least alpha from every earlier crossing; same at v.
  bool check_alpha(std::size_t u, std::size_t v, const Vector& w) const;
  // (beta): both segments keep distance beta from every other vertex.
  bool check_beta(std::size_t u, std::size_t v, const Vector& w) const;
  // (gamma): the parts of the candidate outside the vertex beta-balls keep
  // distance gamma from every placed curve, and vice versa.
  bool check_gamma(std::size_t u, std::size_t v, const Vector& w) const;

  // Short-circuits in the order beta, alpha, gamma.
  bool accepts(std::size_t u, std::size_t v, const Vector& w) const;
  // Evaluates all three conditions.
  CandidateVerdict evaluate(std::size_t u, std::size_t v, const Vector& w) const;

  void commit(std::size_t u, std::size_t v, const Vector& w);
  std::size_t placed_count() const;

  const TestspaceGraph& testspace() const;
  const EmbedParams& params() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct EdgeRecord {
  std::size_t u = 0;
  std::size_t v = 0;
  Vector w;
  std::size_t attempts = 0;
};

struct PolylineEmbedding {
  TestspaceGraph testspace;
  EmbedParams params;
  std::vector<EdgeRecord> edges;  // lexicographic, matching graph.edges()
};

// Raised when an edge exhausts retry_cap. Carries the per-condition tally.
class PlacementError : public ConstructionError {
 public:
  PlacementError(const std::string& message, std::size_t edge,
                 std::size_t alpha_fail, std::size_t beta_fail,
                 std::size_t gamma_fail)
      : ConstructionError(message),
        edge(edge),
        alpha_failures(alpha_fail),
        beta_failures(beta_fail),
        gamma_failures(gamma_fail) {}
  std::size_t edge;
  std::size_t alpha_failures;
  std::size_t beta_failures;
  std::size_t gamma_failures;
};

struct PlaceOptions {
  // Place only the first `edge_limit` edges (all when 0).
  std::size_t edge_limit = 0;
  // Candidates evaluated concurrently per round.
  std::size_t batch = 0;
  unsigned threads = 0;
};

// Candidate k of edge i is drawn from B(midpoint, mu) with a stream keyed by
// (seed, i, k), and the lowest passing k wins, so results do not depend on
// the thread count. Requires dimension >= 3 and a net built with delta = 1.
PolylineEmbedding place_edges(const TestspaceGraph& tg, const EmbedParams& params,
                              const PlaceOptions& options = {});

// Rebuilds the placement state after the first `count` edges.
Placement replay(const PolylineEmbedding& embedding, std::size_t count);

struct EmbeddingCheck {
  bool ok = true;
  std::optional<std::size_t> failed_edge;
  std::string failed_condition;
  double min_curve_length_ratio = 0.0;  // min over edges of L / |v - u|
  double max_curve_length = 0.0;
};

// Re-derives (alpha), (beta), (gamma) for every edge against all earlier ones
// with generic sphere crossings and clipping against every vertex ball, and
// checks w in B(midpoint, mu) and curve lengths in [|v - u|, 3.5].
EmbeddingCheck verify_embedding(const PolylineEmbedding& embedding,
                                unsigned threads = 0);

// A point of the thickening: edge index (lexicographic) and the position
// t in [0, 1] measured from the lower endpoint.
struct TGPoint {
  std::size_t edge = 0;
  double t = 0.0;
};

// The thickening TG of a graph: every edge a unit interval.
class Thickening {
 public:
  explicit Thickening(const Graph& g);

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const DistanceMatrix& hops() const noexcept { return *hops_; }
  // A TGPoint at vertex x (on its first incident edge).
  TGPoint vertex_point(std::size_t x) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> first_edge_;
  std::shared_ptr<const DistanceMatrix> hops_;
};

// Length of the shortest curve joining p and q in TG.
double tg_distance(const Thickening& tg, const TGPoint& p, const TGPoint& q);

// Point of TG matching each vertex of the subdivision: step k of edge e is
// (e, k/M).
std::vector<TGPoint> mg_tg_points(const Thickening& tg, const SubdividedGraph& mg);

// Image of a TG point: arclength fraction t along [u, w] + [w, v].
Vector curve_point(const PolylineEmbedding& embedding, const TGPoint& p);

// Images of the subdivision vertices, indexed as in subdivide(graph, M).
std::vector<Vector> mg_positions(const PolylineEmbedding& embedding, int M);

struct TGPointPair {
  TGPoint p;
  TGPoint q;
};

struct TgAudit {
  double lip_forward = 0.0;
  double lip_inverse = 0.0;
  double distortion = 0.0;
  TGPointPair witness_forward;
  TGPointPair witness_inverse;
  std::size_t vertex_pairs = 0;
  std::size_t interior_pairs = 0;
  double forward_bound = 4.0;
  double inverse_bound = 0.0;  // 1 + 6 / gamma
  // Largest inverse ratio per pair category.
  double inverse_vertex_vertex = 0.0;
  double inverse_vertex_interior = 0.0;
  double inverse_same_edge = 0.0;
  double inverse_adjacent = 0.0;
  double inverse_nonadjacent = 0.0;
  bool forward_ok() const { return lip_forward <= forward_bound; }
  bool inverse_ok() const { return lip_inverse <= inverse_bound; }
};

// Ratios d_TG / |f p - f q| over all vertex pairs plus `interior_samples`
// random pairs, split evenly between uniform pairs, pairs on one edge, pairs
// on adjacent edges near the shared vertex, and vertex-to-interior pairs.
TgAudit audit_tg(const PolylineEmbedding& embedding, std::size_t interior_samples,
                 std::uint64_t seed, unsigned threads = 0);

struct SuitableFraction {
  std::size_t samples = 0;
  std::size_t suitable = 0;
  std::size_t alpha_fail = 0;
  std::size_t beta_fail = 0;
  std::size_t gamma_fail = 0;
  double fraction = 0.0;
  double wilson_low = 0.0;   // 95% Wilson interval
  double wilson_high = 0.0;
  double half_width() const { return 0.5 * (wilson_high - wilson_low); }
};

// Monte Carlo share of B(midpoint(u, v), mu) whose breakpoint passes all
// three conditions against the current placement.
SuitableFraction estimate_suitable_fraction(const Placement& placement,
                                            std::size_t u, std::size_t v,
                                            std::size_t samples,
                                            std::uint64_t seed,
                                            unsigned threads = 0);

// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n,
                                          double z = 1.959963984540054);

}  // namespace testspace
