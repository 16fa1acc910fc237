#include "testspace/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "testspace/error.hpp"

namespace testspace {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what, path);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "." + key, "missing");
  return *it;
}

double get_number(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

double number_at(const Json& j, const char* key, const std::string& path) {
  return get_number(member(j, key, path), path + "." + key);
}

std::size_t index_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::size_t index_at(const Json& j, const char* key, const std::string& path) {
  return index_of(member(j, key, path), path + "." + key);
}

std::string string_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_string()) bad(path + "." + key, "expected a string");
  return v.get<std::string>();
}

const Json& array_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_array()) bad(path + "." + key, "expected an array");
  return v;
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Json pair_json(const IndexPair& p) { return Json::array({p.first, p.second}); }

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [u, v] : edges) out.push_back(Json::array({u, v}));
  return out;
}

std::vector<Vector> points_from_json(const Json& arr, const std::string& path) {
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(vector_from_json(arr[i], item(path, i)));
  }
  return out;
}

Json points_json(const std::vector<Vector>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

}  // namespace

Json number(double x) {
  if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
  return Json(x);
}

// ---------------------------------------------------------------------------

Json to_json(const NormedSpace& space) {
  Json j;
  switch (space.kind()) {
    case NormKind::kLp:
      j["kind"] = "lp";
      j["p"] = number(space.p());
      j["dim"] = space.dimension();
      break;
    case NormKind::kL1Sum:
      j["kind"] = "l1sum";
      j["dim"] = space.dimension();
      j["parts"] = Json::array({to_json(space.first()), to_json(space.second())});
      break;
    case NormKind::kCustom:
      j["kind"] = "custom";
      j["name"] = space.name();
      j["dim"] = space.dimension();
      j["box_factor"] = space.box_factor();
      break;
  }
  return j;
}

NormedSpace space_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return parse_space_descriptor(j.get<std::string>());
  const std::string kind = string_at(j, "kind", path);
  const std::size_t dim = index_at(j, "dim", path);
  if (kind == "lp") {
    const double p = number_at(j, "p", path);
    try {
      return NormedSpace::lp(p, dim);
    } catch (const ValidationError& e) {
      bad(path, e.what());
    }
  }
  if (kind == "l1sum") {
    const Json& parts = array_at(j, "parts", path);
    if (parts.size() != 2) bad(path + ".parts", "expected two summands");
    NormedSpace s = direct_sum_l1(space_from_json(parts[0], path + ".parts[0]"),
                                  space_from_json(parts[1], path + ".parts[1]"));
    if (s.dimension() != dim) bad(path + ".dim", "does not match the summands");
    return s;
  }
  if (kind == "custom") {
    const std::string name = string_at(j, "name", path);
    if (auto s = find_custom_norm(name, dim)) return *s;
    bad(path + ".name", "unknown custom norm '" + name + "'");
  }
  bad(path + ".kind", "expected lp, l1sum or custom");
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(item(path, i), "expected a number");
    v[i] = j[i].get<double>();
    if (!std::isfinite(v[i])) bad(item(path, i), "not finite");
  }
  return v;
}

Json to_json(const Net& net) {
  Json j;
  j["space"] = to_json(net.space);
  j["delta"] = net.delta;
  j["r"] = net.r;
  j["rho"] = net.rho;
  j["mesh"] = net.mesh_divisor;
  j["covering_certificate"] = net.covering_certificate;
  j["points"] = points_json(net.points);
  return j;
}

Net net_from_json(const Json& j, const std::string& path) {
  NormedSpace space = space_from_json(member(j, "space", path), path + ".space");
  Net net{space,
          number_at(j, "delta", path),
          number_at(j, "r", path),
          static_cast<int>(index_at(j, "mesh", path)),
          points_from_json(array_at(j, "points", path), path + ".points"),
          number_at(j, "covering_certificate", path),
          number_at(j, "rho", path)};
  if (!(net.delta > 0.0)) bad(path + ".delta", "must be positive");
  if (!(net.r > net.delta)) bad(path + ".r", "must exceed delta");
  if (!(net.rho >= net.delta)) bad(path + ".rho", "must be at least delta");
  if (net.points.empty()) bad(path + ".points", "empty");
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    if (net.points[i].size() != space.dimension()) {
      bad(item(path + ".points", i), "dimension mismatch");
    }
  }
  return net;
}

Json graph_to_json(const Graph& g, const std::vector<Vector>* coords) {
  Json j;
  j["n"] = g.vertex_count();
  j["edges"] = edges_json(g.edges());
  if (coords) j["coords"] = points_json(*coords);
  return j;
}

Graph graph_from_json(const Json& j, const std::string& path) {
  const std::size_t n = index_at(j, "n", path);
  const Json& arr = array_at(j, "edges", path);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = item(path + ".edges", i);
    if (!arr[i].is_array() || arr[i].size() != 2) bad(p, "expected [u, v]");
    edges.emplace_back(index_of(arr[i][0], p + "[0]"), index_of(arr[i][1], p + "[1]"));
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const ValidationError& e) {
    bad(path + ".edges", e.what());
  }
}

Json to_json(const TestspaceGraph& tg) {
  Json j = graph_to_json(tg.graph, &tg.coords());
  j["edge_threshold"] = tg.edge_threshold;
  Json net = to_json(tg.net);
  net.erase("points");
  j["net"] = net;
  return j;
}

TestspaceGraph testspace_graph_from_json(const Json& j, const std::string& path) {
  Json net_json = member(j, "net", path);
  net_json["points"] = array_at(j, "coords", path);
  Net net = net_from_json(net_json, path + ".net");
  Graph g = graph_from_json(j, path);
  if (g.vertex_count() != net.points.size()) {
    bad(path + ".n", "does not match the number of coords");
  }
  const double threshold = number_at(j, "edge_threshold", path);
  TestspaceGraph tg{std::move(net), std::move(g), threshold};
  if (std::abs(threshold - 3.0 * tg.net.rho) > 1e-12 * threshold) {
    bad(path + ".edge_threshold", "must equal 3 rho");
  }
  if (!verify_edge_rule(tg)) bad(path + ".edges", "do not follow the 3 rho rule");
  return tg;
}

Json to_json(const DistortionReport& r) {
  Json j;
  j["lip_forward"] = number(r.lip_forward);
  j["lip_inverse"] = number(r.lip_inverse);
  j["distortion"] = number(r.distortion);
  j["witness_forward"] = pair_json(r.witness_forward);
  j["witness_inverse"] = pair_json(r.witness_inverse);
  j["pairs_checked"] = r.pairs_checked;
  j["exhaustive"] = r.exhaustive;
  return j;
}

Json to_json(const PathBoundReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["violation"] = r.violation ? pair_json(*r.violation) : Json(nullptr);
  j["tightest"] = r.tightest ? pair_json(*r.tightest) : Json(nullptr);
  j["tightest_slack"] = r.tightest_slack;
  j["pairs_checked"] = r.pairs_checked;
  return j;
}

Json to_json(const IdentityAudit& a) {
  Json j = to_json(a.report);
  j["forward_bound"] = a.forward_bound;
  j["inverse_bound"] = a.inverse_bound;
  j["distortion_bound"] = a.distortion_bound;
  j["within_bounds"] = a.within_bounds;
  return j;
}

// ---------------------------------------------------------------------------

Json to_json(const SubdividedGraph& mg) {
  Json j = graph_to_json(mg.graph);
  j["M"] = mg.M;
  j["base"] = graph_to_json(mg.base);
  return j;
}

Json to_json(const GadgetGraph& h) {
  Json j;
  j["M"] = h.M;
  j["psi_anchor"] = h.psi_anchor;
  j["short_path_vertices"] = h.edge_count();
  j["base"] = graph_to_json(h.base);
  j["edge_order"] = edges_json(h.edge_order);
  j["n"] = h.graph.vertex_count();
  j["edges"] = edges_json(h.graph.edges());
  j["max_degree"] = max_degree(h.graph);
  Json shorts = Json::array();
  for (std::size_t u = 0; u < h.base.vertex_count(); ++u) {
    Json path = Json::array();
    for (std::size_t label = 1; label <= h.edge_count(); ++label) {
      path.push_back(h.short_vertex(u, label));
    }
    shorts.push_back(path);
  }
  j["short_paths"] = shorts;
  Json longs = Json::array();
  for (std::size_t label = 1; label <= h.edge_count(); ++label) {
    Json path = Json::array();
    for (int step = 0; step <= h.M; ++step) path.push_back(h.long_vertex(label, step));
    longs.push_back(path);
  }
  j["long_paths"] = longs;
  Json labels = Json::array();
  for (const auto& v : h.vertices) {
    Json x;
    x["role"] = v.role == GadgetRole::kShort ? "short" : "long";
    x["base_vertex"] = v.base_vertex;
    x["label"] = v.label;
    x["step"] = v.step;
    x["mg_vertex"] = v.mg_vertex;
    labels.push_back(x);
  }
  j["vertices"] = labels;
  return j;
}

GadgetGraph gadget_from_json(const Json& j, const std::string& path) {
  const Graph base = graph_from_json(member(j, "base", path), path + ".base");
  const std::size_t m = index_at(j, "M", path);
  const std::size_t anchor =
      j.contains("psi_anchor") ? index_at(j, "psi_anchor", path) : 1;
  GadgetGraph h;
  try {
    h = build_gadget(base, static_cast<int>(m), anchor);
  } catch (const ValidationError& e) {
    bad(path, e.what());
  }
  if (j.contains("edges")) {
    const Graph stored = graph_from_json(j, path);
    if (!(stored == h.graph)) bad(path + ".edges", "do not match the construction");
  }
  return h;
}

Json to_json(const PsiAudit& a) {
  Json j = to_json(a.report);
  j["lip_bound"] = a.lip_bound;
  j["inverse_bound"] = a.inverse_bound;
  j["violation"] = a.violation ? pair_json(*a.violation) : Json(nullptr);
  j["ok"] = a.ok();
  return j;
}

Json to_json(const PhiAudit& a, const PhiMap& map) {
  Json j;
  j["phi"] = to_json(a.report);
  j["phi0"] = to_json(a.phi0_report);
  j["phi0_edge_lip"] = map.phi0_edge_lip;
  j["normalization"] = map.normalization;
  j["forward_bound"] = 1.0;
  j["inverse_bound"] = number(2.0 * a.phi0_report.lip_inverse);
  j["case1_pairs"] = a.case1_pairs;
  j["case2_pairs"] = a.case2_pairs;
  j["case_violation"] = a.case_violation ? pair_json(*a.case_violation) : Json(nullptr);
  j["forward_ok"] = a.forward_ok;
  j["inverse_ok"] = a.inverse_ok;
  j["ok"] = a.ok();
  return j;
}

// ---------------------------------------------------------------------------

Json to_json(const EmbedParams& p) {
  Json j;
  j["mode"] = to_string(p.mode);
  j["mu"] = p.mu;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["C"] = p.C;
  j["retry_cap"] = p.retry_cap;
  j["seed"] = p.seed;
  j["tol"] = p.tol;
  return j;
}

EmbedParams params_from_json(const Json& j, const std::string& path) {
  EmbedParams p;
  try {
    p.mode = parse_embed_mode(string_at(j, "mode", path));
  } catch (const ValidationError& e) {
    bad(path + ".mode", e.what());
  }
  p.mu = number_at(j, "mu", path);
  p.alpha = number_at(j, "alpha", path);
  p.beta = number_at(j, "beta", path);
  p.gamma = number_at(j, "gamma", path);
  p.C = number_at(j, "C", path);
  p.retry_cap = index_at(j, "retry_cap", path);
  const Json& seed = member(j, "seed", path);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    bad(path + ".seed", "expected an integer");
  }
  p.seed = seed.get<std::uint64_t>();
  p.tol = number_at(j, "tol", path);
  const auto problems = param_violations(p);
  if (!problems.empty()) bad(path, "violates " + problems.front());
  return p;
}

Json to_json(const PolylineEmbedding& e) {
  Json j;
  j["params"] = to_json(e.params);
  j["graph"] = to_json(e.testspace);
  Json edges = Json::array();
  for (const auto& r : e.edges) {
    Json x;
    x["u"] = r.u;
    x["v"] = r.v;
    x["w"] = to_json(r.w);
    x["attempts"] = r.attempts;
    edges.push_back(x);
  }
  j["edges"] = edges;
  return j;
}

PolylineEmbedding embedding_from_json(const Json& j, const std::string& path) {
  PolylineEmbedding e{
      testspace_graph_from_json(member(j, "graph", path), path + ".graph"),
      params_from_json(member(j, "params", path), path + ".params"),
      {}};
  const Json& arr = array_at(j, "edges", path);
  const auto expected = e.testspace.graph.edges();
  if (arr.size() > expected.size()) bad(path + ".edges", "more edges than the graph");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = item(path + ".edges", i);
    EdgeRecord r{index_at(arr[i], "u", p), index_at(arr[i], "v", p),
                 vector_from_json(member(arr[i], "w", p), p + ".w"),
                 index_at(arr[i], "attempts", p)};
    if (Edge{r.u, r.v} != expected[i]) bad(p, "edges must follow lexicographic order");
    if (r.w.size() != e.testspace.space().dimension()) bad(p + ".w", "dimension mismatch");
    e.edges.push_back(std::move(r));
  }
  return e;
}

Json to_json(const EmbeddingCheck& c) {
  Json j;
  j["ok"] = c.ok;
  j["failed_edge"] = c.failed_edge ? Json(*c.failed_edge) : Json(nullptr);
  j["failed_condition"] = c.failed_condition;
  j["min_curve_length_ratio"] = c.min_curve_length_ratio;
  j["max_curve_length"] = c.max_curve_length;
  return j;
}

namespace {

Json tg_pair_json(const TGPointPair& p) {
  return Json::array({Json::object({{"edge", p.p.edge}, {"t", p.p.t}}),
                      Json::object({{"edge", p.q.edge}, {"t", p.q.t}})});
}

}  // namespace

Json to_json(const TgAudit& a) {
  Json j;
  j["lip_forward"] = number(a.lip_forward);
  j["lip_inverse"] = number(a.lip_inverse);
  j["distortion"] = number(a.distortion);
  j["witness_forward"] = tg_pair_json(a.witness_forward);
  j["witness_inverse"] = tg_pair_json(a.witness_inverse);
  j["vertex_pairs"] = a.vertex_pairs;
  j["interior_pairs"] = a.interior_pairs;
  j["forward_bound"] = a.forward_bound;
  j["inverse_bound"] = a.inverse_bound;
  j["forward_ok"] = a.forward_ok();
  j["inverse_ok"] = a.inverse_ok();
  j["inverse_by_kind"] = Json::object({
      {"vertex_vertex", number(a.inverse_vertex_vertex)},
      {"vertex_interior", number(a.inverse_vertex_interior)},
      {"same_edge", number(a.inverse_same_edge)},
      {"adjacent", number(a.inverse_adjacent)},
      {"nonadjacent", number(a.inverse_nonadjacent)},
  });
  return j;
}

Json to_json(const SuitableFraction& s) {
  Json j;
  j["samples"] = s.samples;
  j["suitable"] = s.suitable;
  j["fraction"] = s.fraction;
  j["wilson_low"] = s.wilson_low;
  j["wilson_high"] = s.wilson_high;
  j["alpha_fail"] = s.alpha_fail;
  j["beta_fail"] = s.beta_fail;
  j["gamma_fail"] = s.gamma_fail;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["both"] = c.both;
  if (c.certificate) {
    const auto& cert = *c.certificate;
    Json x;
    x["kind"] = to_string(cert.kind);
    if (cert.kind == CertificateKind::kCycle) {
      x["cycle"] = cert.cycle;
    } else {
      x["center"] = cert.center;
      x["u1"] = cert.u1;
      x["u2"] = cert.u2;
      x["u3"] = cert.u3;
    }
    j["certificate"] = x;
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'", "input");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what(), "input");
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConstructionError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw ConstructionError("write to '" + path + "' failed");
}

}  // namespace testspace
