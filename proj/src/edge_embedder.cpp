#include "testspace/edge_embedder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "testspace/error.hpp"
#include "testspace/parallel.hpp"

namespace testspace {

EmbedParams default_strict_params(std::size_t dimension) {
  if (dimension < 3) throw ValidationError("embedding needs dimension >= 3", "dim");
  EmbedParams p;
  p.mode = EmbedMode::kStrict;
  p.mu = 0.25;
  p.C = 1.0;
  p.beta = p.mu / 546.0;
  p.alpha = p.beta / 1232.0;
  const double bm = p.beta * p.mu;
  p.gamma = std::min({p.alpha, p.beta / 20.0, p.C * bm * bm / 968.0});
  return p;
}

EmbedParams default_practical_params(double beta) {
  EmbedParams p;
  p.mode = EmbedMode::kPractical;
  p.beta = beta;
  p.alpha = beta / 10.0;
  p.gamma = beta / 20.0;
  return p;
}

std::vector<std::string> param_violations(const EmbedParams& p) {
  std::vector<std::string> out;
  auto require = [&](bool ok, const char* what) {
    if (!ok) out.emplace_back(what);
  };
  require(p.mu > 0.0 && std::isfinite(p.mu), "mu > 0");
  require(p.alpha > 0.0 && p.alpha < 0.25, "alpha in (0, 1/4)");
  require(p.beta > 0.0 && p.beta < 0.25, "beta in (0, 1/4)");
  require(p.gamma > 0.0 && p.gamma < 0.25, "gamma in (0, 1/4)");
  require(p.alpha < p.beta, "alpha < beta");
  require(p.gamma < p.beta, "gamma < beta");
  require(p.beta < p.mu, "beta < mu");
  require(p.retry_cap >= 1, "retry_cap >= 1");
  require(p.tol > 0.0, "tol > 0");
  if (p.mode == EmbedMode::kStrict) {
    const double bm = p.beta * p.mu;
    require(p.mu == 0.25, "mu = 1/4");
    require(p.C > 0.0, "C > 0");
    require(p.alpha <= p.beta / 1232.0, "alpha <= beta/1232");
    require(p.beta <= p.mu / 546.0, "beta <= mu/546");
    require(p.gamma <= p.C * bm * bm / 968.0, "gamma <= C (beta mu)^2 / 968");
    require(p.gamma <= p.beta / 20.0, "gamma <= beta/20");
    require(p.gamma <= p.alpha, "gamma <= alpha");
    require(p.beta < p.mu / 5.0, "beta < mu/5");
  }
  return out;
}

void validate_params(const EmbedParams& params) {
  const auto bad = param_violations(params);
  if (!bad.empty()) {
    throw ValidationError("embedding parameters violate " + bad.front(), "params");
  }
}

std::string to_string(EmbedMode mode) {
  return mode == EmbedMode::kStrict ? "strict" : "practical";
}

EmbedMode parse_embed_mode(const std::string& text) {
  if (text == "strict") return EmbedMode::kStrict;
  if (text == "practical") return EmbedMode::kPractical;
  throw ValidationError("mode must be 'strict' or 'practical'", "mode");
}

// ---------------------------------------------------------------------------
// Placement

namespace {

struct Box {
  Vector lo;
  Vector hi;
};

Box box_of(std::initializer_list<const Vector*> pts) {
  Box b{**pts.begin(), **pts.begin()};
  for (const Vector* p : pts) {
    for (std::size_t i = 0; i < p->size(); ++i) {
      b.lo[i] = std::min(b.lo[i], (*p)[i]);
      b.hi[i] = std::max(b.hi[i], (*p)[i]);
    }
  }
  return b;
}

// Lower bound on the norm distance between two boxes.
double box_gap(const NormedSpace& space, const Box& a, const Box& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    gap = std::max({gap, b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]});
  }
  return gap / space.box_factor();
}

double point_box_gap(const NormedSpace& space, const Vector& p, const Box& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    gap = std::max({gap, b.lo[i] - p[i], p[i] - b.hi[i]});
  }
  return gap / space.box_factor();
}

// The two-segment curve of an edge, with its pieces outside B(u, beta) and
// B(v, beta). Once (alpha) and (beta) hold, no other vertex ball meets the
// curve and [u, w] meets B(u, beta) in [u, cross_u] only, so these are exactly
// the parts outside all vertex balls.
struct Curve {
  std::size_t u = 0;
  std::size_t v = 0;
  Segment first;
  Segment second;
  Vector cross_u;
  Vector cross_v;
  Segment clip_first;
  Segment clip_second;
  Box box;
  double length = 0.0;
  double len_u = 0.0;
  double len_v = 0.0;
};

Curve make_curve(const NormedSpace& space, std::size_t u, std::size_t v,
                 const Vector& pu, const Vector& pv, const Vector& w,
                 double beta) {
  Curve c;
  c.u = u;
  c.v = v;
  c.first = Segment{pu, w};
  c.second = Segment{w, pv};
  c.len_u = space.distance(w, pu);
  c.len_v = space.distance(pv, w);
  c.length = c.len_u + c.len_v;
  // |u + s (w - u) - u| = s |w - u|, so the crossing is exact.
  c.cross_u = c.len_u > 0.0 ? lerp(pu, w, beta / c.len_u) : pu;
  c.cross_v = c.len_v > 0.0 ? lerp(pv, w, beta / c.len_v) : pv;
  c.clip_first = Segment{c.cross_u, w};
  c.clip_second = Segment{w, c.cross_v};
  c.box = box_of({&pu, &pv, &w});
  return c;
}

}  // namespace

struct Placement::State {
  TestspaceGraph tg;
  EmbedParams params;
  std::vector<Curve> curves;
  std::vector<std::vector<Vector>> crossings;  // per vertex

  const NormedSpace& space() const { return tg.space(); }
  const Vector& point(std::size_t i) const { return tg.coords()[i]; }

  Curve candidate(std::size_t u, std::size_t v, const Vector& w) const {
    if (u >= v || v >= tg.coords().size() || !tg.graph.has_edge(u, v)) {
      throw ValidationError("candidate must name an edge {u, v} with u < v", "edge");
    }
    if (w.size() != space().dimension()) {
      throw ValidationError("breakpoint dimension mismatch", "w");
    }
    return make_curve(space(), u, v, point(u), point(v), w, params.beta);
  }

  bool alpha(const Curve& c) const {
    const double beta = params.beta;
    const double tol = params.tol;
    if (c.len_u < beta + tol || c.len_v < beta + tol) return false;
    if (!point_segment_clear(space(), point(c.u), c.second, beta, tol)) return false;
    if (!point_segment_clear(space(), point(c.v), c.first, beta, tol)) return false;
    const double need = params.alpha + tol;
    for (const auto& x : crossings[c.u]) {
      if (space().distance(x, c.cross_u) < need) return false;
    }
    for (const auto& x : crossings[c.v]) {
      if (space().distance(x, c.cross_v) < need) return false;
    }
    return true;
  }

  bool beta(const Curve& c) const {
    const double beta = params.beta;
    const double tol = params.tol;
    const Box b1 = box_of({&c.first.a, &c.first.b});
    const Box b2 = box_of({&c.second.a, &c.second.b});
    for (std::size_t x = 0; x < tg.coords().size(); ++x) {
      if (x == c.u || x == c.v) continue;
      const Vector& p = point(x);
      const double need = beta + tol * (c.length + 1.0);
      if (point_box_gap(space(), p, c.box) >= need) continue;
      if (point_box_gap(space(), p, b1) < need &&
          !point_segment_clear(space(), p, c.first, beta, tol)) {
        return false;
      }
      if (point_box_gap(space(), p, b2) < need &&
          !point_segment_clear(space(), p, c.second, beta, tol)) {
        return false;
      }
    }
    return true;
  }

  bool gamma(const Curve& c) const {
    const double gamma = params.gamma;
    const double tol = params.tol;
    for (const Curve& d : curves) {
      if (box_gap(space(), c.box, d.box) >= gamma + tol * (c.length + d.length + 1.0)) {
        continue;
      }
      for (const Segment* mine : {&c.clip_first, &c.clip_second}) {
        for (const Segment* theirs : {&d.first, &d.second}) {
          if (!segments_clear(space(), *mine, *theirs, gamma, tol)) return false;
        }
      }
      for (const Segment* theirs : {&d.clip_first, &d.clip_second}) {
        for (const Segment* mine : {&c.first, &c.second}) {
          if (!segments_clear(space(), *theirs, *mine, gamma, tol)) return false;
        }
      }
    }
    return true;
  }
};

Placement::Placement(const TestspaceGraph& tg, const EmbedParams& params)
    : state_(std::make_unique<State>(State{tg, params, {}, {}})) {
  validate_params(params);
  state_->crossings.resize(tg.coords().size());
}

Placement::~Placement() = default;
Placement::Placement(Placement&&) noexcept = default;
Placement& Placement::operator=(Placement&&) noexcept = default;

bool Placement::check_alpha(std::size_t u, std::size_t v, const Vector& w) const {
  return state_->alpha(state_->candidate(u, v, w));
}

bool Placement::check_beta(std::size_t u, std::size_t v, const Vector& w) const {
  return state_->beta(state_->candidate(u, v, w));
}

bool Placement::check_gamma(std::size_t u, std::size_t v, const Vector& w) const {
  return state_->gamma(state_->candidate(u, v, w));
}

bool Placement::accepts(std::size_t u, std::size_t v, const Vector& w) const {
  const Curve c = state_->candidate(u, v, w);
  return state_->beta(c) && state_->alpha(c) && state_->gamma(c);
}

CandidateVerdict Placement::evaluate(std::size_t u, std::size_t v,
                                     const Vector& w) const {
  const Curve c = state_->candidate(u, v, w);
  return CandidateVerdict{state_->alpha(c), state_->beta(c), state_->gamma(c)};
}

void Placement::commit(std::size_t u, std::size_t v, const Vector& w) {
  Curve c = state_->candidate(u, v, w);
  state_->crossings[u].push_back(c.cross_u);
  state_->crossings[v].push_back(c.cross_v);
  state_->curves.push_back(std::move(c));
}

std::size_t Placement::placed_count() const { return state_->curves.size(); }
const TestspaceGraph& Placement::testspace() const { return state_->tg; }
const EmbedParams& Placement::params() const { return state_->params; }

namespace {

void check_embed_preconditions(const TestspaceGraph& tg, const EmbedParams& params) {
  validate_params(params);
  if (tg.space().dimension() < 3) {
    throw ValidationError("embedding needs dimension >= 3", "dim");
  }
  if (std::abs(tg.net.delta - 1.0) > 1e-12) {
    throw ValidationError("embedding needs a test-space graph with delta = 1", "delta");
  }
}

Vector midpoint(const Vector& a, const Vector& b) { return lerp(a, b, 0.5); }

Vector draw_candidate(const NormedSpace& space, const Vector& z,
                      const EmbedParams& params, std::size_t edge,
                      std::size_t attempt) {
  Rng rng = Rng::derive(params.seed, edge, attempt);
  return sample_ball(space, z, params.mu, rng);
}

}  // namespace

PolylineEmbedding place_edges(const TestspaceGraph& tg, const EmbedParams& params,
                              const PlaceOptions& options) {
  check_embed_preconditions(tg, params);
  const unsigned threads = options.threads ? options.threads : default_threads();
  const std::size_t batch =
      options.batch ? options.batch : (threads <= 1 ? 1 : 4 * std::size_t{threads});
  const auto edges = tg.graph.edges();
  const std::size_t limit =
      options.edge_limit ? std::min(options.edge_limit, edges.size()) : edges.size();

  Placement placement(tg, params);
  PolylineEmbedding out{tg, params, {}};
  out.edges.reserve(limit);
  const NormedSpace& space = tg.space();
  for (std::size_t i = 0; i < limit; ++i) {
    const auto [u, v] = edges[i];
    const Vector z = midpoint(tg.coords()[u], tg.coords()[v]);
    std::optional<std::size_t> winner;
    Vector w;
    for (std::size_t start = 0; start < params.retry_cap && !winner; start += batch) {
      const std::size_t count = std::min(batch, params.retry_cap - start);
      std::vector<Vector> cands(count);
      std::vector<char> pass(count, 0);
      parallel_for(count, threads, [&](std::size_t k) {
        cands[k] = draw_candidate(space, z, params, i, start + k);
        pass[k] = placement.accepts(u, v, cands[k]) ? 1 : 0;
      });
      for (std::size_t k = 0; k < count; ++k) {
        if (pass[k]) {
          winner = start + k;
          w = std::move(cands[k]);
          break;
        }
      }
    }
    if (!winner) {
      std::size_t fa = 0, fb = 0, fg = 0;
      for (std::size_t k = 0; k < params.retry_cap; ++k) {
        const auto verdict = placement.evaluate(u, v, draw_candidate(space, z, params, i, k));
        fa += !verdict.alpha;
        fb += !verdict.beta;
        fg += !verdict.gamma;
      }
      throw PlacementError("edge " + std::to_string(i) + " {" + std::to_string(u) +
                               ", " + std::to_string(v) + "} found no breakpoint in " +
                               std::to_string(params.retry_cap) +
                               " draws (failures: alpha " + std::to_string(fa) +
                               ", beta " + std::to_string(fb) + ", gamma " +
                               std::to_string(fg) + ")",
                           i, fa, fb, fg);
    }
    placement.commit(u, v, w);
    out.edges.push_back(EdgeRecord{u, v, std::move(w), *winner + 1});
  }
  return out;
}

Placement replay(const PolylineEmbedding& embedding, std::size_t count) {
  if (count > embedding.edges.size()) {
    throw ValidationError("replay count exceeds placed edges", "count");
  }
  Placement placement(embedding.testspace, embedding.params);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = embedding.edges[i];
    placement.commit(e.u, e.v, e.w);
  }
  return placement;
}

// ---------------------------------------------------------------------------
// Independent re-verification

namespace {

struct Piece {
  Segment seg;
  Box box;
};

Piece make_piece(Segment s) {
  Box b = box_of({&s.a, &s.b});
  return Piece{std::move(s), std::move(b)};
}

// Parts of s outside every vertex ball B(x, beta), found from sphere roots.
std::vector<Piece> clip_outside_balls(const NormedSpace& space, const Segment& s,
                                      const std::vector<Vector>& vertices,
                                      double beta, double tol) {
  const Box sb = box_of({&s.a, &s.b});
  std::vector<double> cuts{0.0, 1.0};
  std::vector<std::size_t> near;
  for (std::size_t x = 0; x < vertices.size(); ++x) {
    if (point_box_gap(space, vertices[x], sb) > beta) continue;
    near.push_back(x);
    for (double t : sphere_segment_intersections(space, vertices[x], beta, s, tol)) {
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double t0 = cuts[k];
    const double t1 = cuts[k + 1];
    if (t1 - t0 <= tol) continue;
    const Vector mid = s.at(0.5 * (t0 + t1));
    const bool inside = std::any_of(near.begin(), near.end(), [&](std::size_t x) {
      return space.distance(mid, vertices[x]) < beta;
    });
    if (!inside) out.push_back(make_piece(Segment{s.at(t0), s.at(t1)}));
  }
  return out;
}

struct VerifyCurve {
  std::size_t u = 0;
  std::size_t v = 0;
  std::vector<Piece> whole;
  std::vector<Piece> clipped;
  Box box;
  double length = 0.0;
};

struct EdgeVerdict {
  std::string failure;
  double length_ratio = 0.0;
  double length = 0.0;
};

}  // namespace

EmbeddingCheck verify_embedding(const PolylineEmbedding& embedding, unsigned threads) {
  const auto& tg = embedding.testspace;
  const auto& params = embedding.params;
  const NormedSpace& space = tg.space();
  const auto& pts = tg.coords();
  const double beta = params.beta;
  const double tol = params.tol;
  const std::size_t m = embedding.edges.size();

  std::vector<VerifyCurve> curves(m);
  parallel_for(m, threads, [&](std::size_t i) {
    const auto& e = embedding.edges[i];
    VerifyCurve& c = curves[i];
    c.u = e.u;
    c.v = e.v;
    const Segment s1{pts[e.u], e.w};
    const Segment s2{e.w, pts[e.v]};
    c.whole = {make_piece(s1), make_piece(s2)};
    c.clipped = clip_outside_balls(space, s1, pts, beta, tol);
    auto more = clip_outside_balls(space, s2, pts, beta, tol);
    c.clipped.insert(c.clipped.end(), more.begin(), more.end());
    c.box = box_of({&pts[e.u], &pts[e.v], &e.w});
    c.length = space.distance(pts[e.u], e.w) + space.distance(e.w, pts[e.v]);
  });

  // Crossings of S(x, beta) by segment k of curve j, for every vertex x.
  auto crossings_of = [&](std::size_t x, const Segment& s) {
    std::vector<Vector> out;
    for (double t : sphere_segment_intersections(space, pts[x], beta, s, tol)) {
      out.push_back(s.at(t));
    }
    return out;
  };

  std::vector<EdgeVerdict> verdicts(m);
  parallel_for(m, threads, [&](std::size_t i) {
    const auto& e = embedding.edges[i];
    const VerifyCurve& c = curves[i];
    EdgeVerdict& out = verdicts[i];
    const double base = space.distance(pts[e.u], pts[e.v]);
    out.length = c.length;
    out.length_ratio = c.length / base;
    auto fail = [&](const std::string& what) {
      if (out.failure.empty()) out.failure = what;
    };
    if (!tg.graph.has_edge(e.u, e.v) || e.u >= e.v) return fail("not an edge");
    if (space.distance(e.w, lerp(pts[e.u], pts[e.v], 0.5)) >
        params.mu * (1.0 + 1e-12)) {
      return fail("breakpoint outside B(midpoint, mu)");
    }
    if (c.length < base * (1.0 - 1e-12) || c.length > 3.5) {
      return fail("curve length outside [|v - u|, 3.5]");
    }

    // (beta)
    for (std::size_t x = 0; x < pts.size(); ++x) {
      if (x == e.u || x == e.v) continue;
      for (const auto& piece : c.whole) {
        if (point_box_gap(space, pts[x], piece.box) > beta) continue;
        if (point_segment_distance(space, pts[x], piece.seg, tol) < beta) {
          return fail("beta");
        }
      }
    }

    // (alpha): one crossing of S(u, beta), on [u, w], and none on [w, v].
    std::vector<Vector> own[2];
    const std::size_t ends[2] = {e.u, e.v};
    for (int side = 0; side < 2; ++side) {
      const std::size_t x = ends[side];
      const auto near = crossings_of(x, c.whole[side].seg);
      const auto far = crossings_of(x, c.whole[1 - side].seg);
      if (near.size() != 1 || !far.empty()) {
        return fail("alpha (curve does not meet the ball in one segment)");
      }
      own[side] = near;
    }
    for (std::size_t j = 0; j < i; ++j) {
      const VerifyCurve& d = curves[j];
      for (int side = 0; side < 2; ++side) {
        const std::size_t x = ends[side];
        for (const auto& piece : d.whole) {
          if (point_box_gap(space, pts[x], piece.box) > beta) continue;
          for (const auto& y : crossings_of(x, piece.seg)) {
            if (space.distance(y, own[side][0]) < params.alpha) {
              return fail("alpha");
            }
          }
        }
      }
    }

    // (gamma), both directions.
    for (std::size_t j = 0; j < i; ++j) {
      const VerifyCurve& d = curves[j];
      if (box_gap(space, c.box, d.box) > params.gamma + tol * (c.length + d.length + 1.0)) {
        continue;
      }
      for (const auto* pair : {&c, &d}) {
        const VerifyCurve& a = *pair;
        const VerifyCurve& b = pair == &c ? d : c;
        for (const auto& p : a.clipped) {
          for (const auto& q : b.whole) {
            if (!segments_clear(space, p.seg, q.seg, params.gamma, tol)) {
              return fail("gamma (against edge " + std::to_string(j) + ")");
            }
          }
        }
      }
    }
  });

  EmbeddingCheck check;
  check.min_curve_length_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    check.min_curve_length_ratio =
        std::min(check.min_curve_length_ratio, verdicts[i].length_ratio);
    check.max_curve_length = std::max(check.max_curve_length, verdicts[i].length);
    if (check.ok && !verdicts[i].failure.empty()) {
      check.ok = false;
      check.failed_edge = i;
      check.failed_condition = verdicts[i].failure;
    }
  }
  if (m == 0) check.min_curve_length_ratio = 0.0;
  return check;
}

// ---------------------------------------------------------------------------
// Thickening

Thickening::Thickening(const Graph& g)
    : edges_(g.edges()),
      first_edge_(g.vertex_count(), edges_.size()),
      hops_(std::make_shared<const DistanceMatrix>(bfs_apsp(g))) {
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    for (std::size_t x : {edges_[k].first, edges_[k].second}) {
      first_edge_[x] = std::min(first_edge_[x], k);
    }
  }
}

TGPoint Thickening::vertex_point(std::size_t x) const {
  if (x >= first_edge_.size() || first_edge_[x] == edges_.size()) {
    throw ValidationError("vertex has no incident edge", "vertex");
  }
  const std::size_t k = first_edge_[x];
  return TGPoint{k, edges_[k].first == x ? 0.0 : 1.0};
}

double tg_distance(const Thickening& tg, const TGPoint& p, const TGPoint& q) {
  const auto& edges = tg.edges();
  if (p.edge >= edges.size() || q.edge >= edges.size()) {
    throw ValidationError("TG point names a missing edge", "edge");
  }
  if (!(p.t >= 0.0 && p.t <= 1.0) || !(q.t >= 0.0 && q.t <= 1.0)) {
    throw ValidationError("TG point parameter outside [0, 1]", "t");
  }
  const auto [pu, pv] = edges[p.edge];
  const auto [qu, qv] = edges[q.edge];
  const std::size_t pe[2] = {pu, pv};
  const double po[2] = {p.t, 1.0 - p.t};
  const std::size_t qe[2] = {qu, qv};
  const double qo[2] = {q.t, 1.0 - q.t};
  double best = p.edge == q.edge ? std::abs(p.t - q.t)
                                 : std::numeric_limits<double>::infinity();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      best = std::min(best, po[a] + tg.hops()(pe[a], qe[b]) + qo[b]);
    }
  }
  return best;
}

std::vector<TGPoint> mg_tg_points(const Thickening& tg, const SubdividedGraph& mg) {
  if (mg.edges != tg.edges()) {
    throw ValidationError("subdivision and thickening come from different graphs");
  }
  std::vector<TGPoint> out(mg.graph.vertex_count());
  for (std::size_t x = 0; x < mg.original_count(); ++x) out[x] = tg.vertex_point(x);
  for (std::size_t k = 0; k < mg.edges.size(); ++k) {
    for (int step = 1; step < mg.M; ++step) {
      out[mg.vertex_at(k, step)] =
          TGPoint{k, static_cast<double>(step) / static_cast<double>(mg.M)};
    }
  }
  return out;
}

Vector curve_point(const PolylineEmbedding& embedding, const TGPoint& p) {
  if (p.edge >= embedding.edges.size()) {
    throw ValidationError("TG point names an unplaced edge", "edge");
  }
  const auto& e = embedding.edges[p.edge];
  const auto& pts = embedding.testspace.coords();
  const Vector& u = pts[e.u];
  const Vector& v = pts[e.v];
  if (p.t <= 0.0) return u;
  if (p.t >= 1.0) return v;
  const NormedSpace& space = embedding.testspace.space();
  const double l1 = space.distance(e.w, u);
  const double l2 = space.distance(v, e.w);
  const double s = p.t * (l1 + l2);
  if (s <= l1) return lerp(u, e.w, s / l1);
  return lerp(e.w, v, (s - l1) / l2);
}

std::vector<Vector> mg_positions(const PolylineEmbedding& embedding, int M) {
  const Graph& g = embedding.testspace.graph;
  if (embedding.edges.size() != g.edge_count()) {
    throw ValidationError("embedding does not cover every edge", "edges");
  }
  const SubdividedGraph mg = subdivide(g, M);
  const Thickening tg(g);
  const auto points = mg_tg_points(tg, mg);
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(curve_point(embedding, p));
  return out;
}

// ---------------------------------------------------------------------------
// TG audit

namespace {

enum class PairKind { kVertexVertex, kVertexInterior, kSameEdge, kAdjacent, kNonadjacent };

struct SampledPair {
  TGPoint p;
  TGPoint q;
  PairKind kind = PairKind::kNonadjacent;
};

bool is_vertex(const TGPoint& p) { return p.t == 0.0 || p.t == 1.0; }

PairKind classify_pair(const Thickening& tg, const TGPoint& p, const TGPoint& q) {
  const bool vp = is_vertex(p);
  const bool vq = is_vertex(q);
  if (vp && vq) return PairKind::kVertexVertex;
  if (vp || vq) return PairKind::kVertexInterior;
  if (p.edge == q.edge) return PairKind::kSameEdge;
  const auto [a, b] = tg.edges()[p.edge];
  const auto [c, d] = tg.edges()[q.edge];
  if (a == c || a == d || b == c || b == d) return PairKind::kAdjacent;
  return PairKind::kNonadjacent;
}

}  // namespace

TgAudit audit_tg(const PolylineEmbedding& embedding, std::size_t interior_samples,
                 std::uint64_t seed, unsigned threads) {
  const Graph& g = embedding.testspace.graph;
  if (embedding.edges.size() != g.edge_count()) {
    throw ValidationError("embedding does not cover every edge", "edges");
  }
  const Thickening tg(g);
  const auto& pts = embedding.testspace.coords();
  const NormedSpace& space = embedding.testspace.space();
  const std::size_t n = pts.size();
  const std::size_t m = tg.edges().size();

  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t k = 0; k < m; ++k) {
    incident[tg.edges()[k].first].push_back(k);
    incident[tg.edges()[k].second].push_back(k);
  }
  const double near = std::min(1.0, 4.0 * embedding.params.beta);
  auto sample = [&](std::size_t index) {
    Rng rng = Rng::derive(seed, 1, index);
    auto uniform_point = [&] {
      return TGPoint{static_cast<std::size_t>(rng.index(m)), rng.uniform()};
    };
    switch (index % 4) {
      case 0:
        return SampledPair{uniform_point(), uniform_point()};
      case 1: {
        const TGPoint p = uniform_point();
        return SampledPair{p, TGPoint{p.edge, rng.uniform()}};
      }
      case 2: {
        const std::size_t k = rng.index(m);
        const auto [a, b] = tg.edges()[k];
        const std::size_t x = rng.index(2) ? b : a;
        const auto& inc = incident[x];
        if (inc.size() < 2) return SampledPair{uniform_point(), uniform_point()};
        std::size_t k2 = inc[rng.index(inc.size() - 1)];
        if (k2 == k) k2 = inc.back();
        auto at_x = [&](std::size_t edge) {
          const double off = near * (1.0 - rng.uniform());  // (0, near]
          return TGPoint{edge, tg.edges()[edge].first == x ? off : 1.0 - off};
        };
        const TGPoint p = at_x(k);
        return SampledPair{p, at_x(k2)};
      }
      default: {
        const std::size_t x = rng.index(n);
        return SampledPair{tg.vertex_point(x), uniform_point()};
      }
    }
  };

  struct Slot {
    double fwd = 0.0;
    double inv = 0.0;
    PairKind kind = PairKind::kVertexVertex;
    TGPointPair pair;
    bool valid = false;
  };
  const std::size_t vertex_pairs = n * (n - 1) / 2;
  std::vector<Slot> slots(vertex_pairs + interior_samples);
  std::vector<std::pair<std::size_t, std::size_t>> vpairs;
  vpairs.reserve(vertex_pairs);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) vpairs.emplace_back(x, y);
  }
  parallel_for(slots.size(), threads, [&](std::size_t k) {
    Slot& s = slots[k];
    double d_tg = 0.0;
    double d_x = 0.0;
    if (k < vertex_pairs) {
      const auto [x, y] = vpairs[k];
      s.pair = TGPointPair{tg.vertex_point(x), tg.vertex_point(y)};
      s.kind = PairKind::kVertexVertex;
      d_tg = tg.hops()(x, y);
      d_x = space.distance(pts[x], pts[y]);
    } else {
      const SampledPair sp = sample(k - vertex_pairs);
      s.pair = TGPointPair{sp.p, sp.q};
      s.kind = classify_pair(tg, sp.p, sp.q);
      d_tg = tg_distance(tg, sp.p, sp.q);
      d_x = space.distance(curve_point(embedding, sp.p), curve_point(embedding, sp.q));
    }
    if (!(d_tg > 0.0)) return;  // the same point of TG
    s.valid = true;
    s.fwd = d_x / d_tg;
    s.inv = d_x > 0.0 ? d_tg / d_x : std::numeric_limits<double>::infinity();
  });

  TgAudit out;
  out.vertex_pairs = vertex_pairs;
  out.interior_pairs = interior_samples;
  out.inverse_bound = 1.0 + 6.0 / embedding.params.gamma;
  for (const Slot& s : slots) {
    if (!s.valid) continue;
    if (s.fwd > out.lip_forward) {
      out.lip_forward = s.fwd;
      out.witness_forward = s.pair;
    }
    if (s.inv > out.lip_inverse) {
      out.lip_inverse = s.inv;
      out.witness_inverse = s.pair;
    }
    double* bucket = nullptr;
    switch (s.kind) {
      case PairKind::kVertexVertex: bucket = &out.inverse_vertex_vertex; break;
      case PairKind::kVertexInterior: bucket = &out.inverse_vertex_interior; break;
      case PairKind::kSameEdge: bucket = &out.inverse_same_edge; break;
      case PairKind::kAdjacent: bucket = &out.inverse_adjacent; break;
      case PairKind::kNonadjacent: bucket = &out.inverse_nonadjacent; break;
    }
    *bucket = std::max(*bucket, s.inv);
  }
  out.distortion = out.lip_forward * out.lip_inverse;
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
  if (n == 0) throw ValidationError("Wilson interval needs at least one sample", "samples");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SuitableFraction estimate_suitable_fraction(const Placement& placement,
                                            std::size_t u, std::size_t v,
                                            std::size_t samples,
                                            std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw ValidationError("samples must be >= 1", "samples");
  const auto& params = placement.params();
  if (!(params.mu > 0.0)) throw ValidationError("mu must be positive", "mu");
  const auto& tg = placement.testspace();
  if (!tg.graph.has_edge(u, v)) throw ValidationError("not an edge", "edge");
  const Vector z = midpoint(tg.coords()[u], tg.coords()[v]);
  std::vector<CandidateVerdict> verdicts(samples);
  parallel_for(samples, threads, [&](std::size_t k) {
    Rng rng = Rng::derive(seed, 2, k);
    const Vector w = sample_ball(tg.space(), z, params.mu, rng);
    verdicts[k] = placement.evaluate(std::min(u, v), std::max(u, v), w);
  });
  SuitableFraction out;
  out.samples = samples;
  for (const auto& verdict : verdicts) {
    out.suitable += verdict.ok();
    out.alpha_fail += !verdict.alpha;
    out.beta_fail += !verdict.beta;
    out.gamma_fail += !verdict.gamma;
  }
  out.fraction = static_cast<double>(out.suitable) / static_cast<double>(samples);
  std::tie(out.wilson_low, out.wilson_high) = wilson_interval(out.suitable, samples);
  return out;
}

}  // namespace testspace
