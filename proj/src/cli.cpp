#include "testspace/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "testspace/classifier.hpp"
#include "testspace/edge_embedder.hpp"
#include "testspace/error.hpp"
#include "testspace/gadget.hpp"
#include "testspace/io.hpp"
#include "testspace/net.hpp"
#include "testspace/parallel.hpp"
#include "testspace/testspace_graph.hpp"

namespace testspace {

namespace {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kAuditFailed = 1;
constexpr int kInvalid = 2;
constexpr int kRuntime = 3;

struct Options {
  unsigned threads = 0;

  std::string space = "lp:2:3";
  double delta = 1.0;
  double r = 2.0;
  int mesh = 4;

  std::string net_path;
  std::string graph_path;
  std::string gadget_path;
  std::string embedding_path;
  std::string output;
  std::string dot_path;
  std::string csv_path;
  std::string out_dir;

  int M = 0;
  std::size_t anchor = 1;

  std::string mode = "practical";
  std::optional<double> mu, alpha, beta, gamma, C, tol;
  std::optional<std::size_t> retry_cap;
  std::uint64_t seed = 0;
  std::size_t edge_limit = 0;

  std::size_t samples = 10'000;
  std::size_t edge = 0;
  std::size_t exhaustive_cap = 2000;
  std::size_t sample_sources = 64;
};

void emit(const Options& o, const Json& j) {
  if (o.output.empty() || o.output == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(o.output, j);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConstructionError("cannot write '" + path + "'");
  out << text;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw ValidationError(std::string(flag) + " is required", flag);
  }
}

AuditOptions audit_options(const Options& o) {
  AuditOptions a;
  a.exhaustive_cap = o.exhaustive_cap;
  a.sample_sources = o.sample_sources;
  a.seed = o.seed;
  a.threads = o.threads;
  return a;
}

Json audit_params(const Options& o) {
  return Json::object({{"exhaustive_cap", o.exhaustive_cap},
                       {"sample_sources", o.sample_sources},
                       {"seed", o.seed}});
}

EmbedParams resolve_params(const Options& o, std::size_t dimension) {
  const EmbedMode mode = parse_embed_mode(o.mode);
  EmbedParams p = mode == EmbedMode::kStrict
                      ? default_strict_params(dimension)
                      : default_practical_params(o.beta.value_or(0.02));
  if (o.mu) p.mu = *o.mu;
  if (o.alpha) p.alpha = *o.alpha;
  if (o.beta) p.beta = *o.beta;
  if (o.gamma) p.gamma = *o.gamma;
  if (o.C) p.C = *o.C;
  if (o.tol) p.tol = *o.tol;
  if (o.retry_cap) p.retry_cap = *o.retry_cap;
  p.seed = o.seed;
  validate_params(p);
  return p;
}

TestspaceGraph load_testspace_graph(const Options& o) {
  if (!o.graph_path.empty()) {
    return testspace_graph_from_json(read_json_file(o.graph_path), "graph");
  }
  if (!o.net_path.empty()) {
    return build_testspace_graph(net_from_json(read_json_file(o.net_path), "net"));
  }
  throw ValidationError("--graph or --net is required", "--graph");
}

Graph load_graph(const Options& o) {
  require(o.graph_path, "--graph");
  return graph_from_json(read_json_file(o.graph_path), "graph");
}

GadgetGraph load_gadget(const Options& o) {
  if (!o.gadget_path.empty()) {
    return gadget_from_json(read_json_file(o.gadget_path), "gadget");
  }
  if (o.M <= 0) throw ValidationError("--gadget or --graph with --M is required", "--gadget");
  return build_gadget(load_graph(o), o.M, o.anchor);
}

Json graph_audit_json(const TestspaceGraph& tg, const AuditOptions& options) {
  const auto hops = bfs_apsp(tg.graph, options.threads);
  const IdentityAudit identity = audit_identity_embedding(tg, options);
  const PathBoundReport path = verify_path_bound(tg, hops);
  const double degree_bound = std::pow(7.0, static_cast<double>(tg.space().dimension()));
  Json j;
  j["identity"] = to_json(identity);
  j["path_bound"] = to_json(path);
  j["max_degree"] = max_degree(tg.graph);
  j["degree_bound"] = degree_bound;
  j["edge_rule"] = verify_edge_rule(tg);
  j["ok"] = identity.within_bounds && path.ok &&
            static_cast<double>(max_degree(tg.graph)) <= degree_bound &&
            j["edge_rule"].get<bool>();
  return j;
}

// --------------------------------------------------------------------------

int cmd_net(const Options& o) {
  const NormedSpace space = parse_space_descriptor(o.space);
  const Net net = build_net(space, o.delta, o.r, o.mesh);
  Json j = to_json(net);
  j["params"] = Json::object({{"space", o.space}, {"delta", o.delta},
                              {"r", o.r}, {"mesh", o.mesh}});
  emit(o, j);
  return kOk;
}

int cmd_graph(const Options& o) {
  TestspaceGraph tg = o.net_path.empty()
                          ? build_testspace_graph(parse_space_descriptor(o.space),
                                                  o.delta, o.r, NetOptions{o.mesh})
                          : load_testspace_graph(o);
  Json j = to_json(tg);
  Json audit = graph_audit_json(tg, audit_options(o));
  const bool ok = audit["ok"].get<bool>();
  j["audit"] = std::move(audit);
  j["audit_params"] = audit_params(o);
  emit(o, j);
  if (!o.dot_path.empty()) write_text(o.dot_path, to_dot(tg.graph));
  return ok ? kOk : kAuditFailed;
}

int cmd_subdivide(const Options& o) {
  if (o.M < 1) throw ValidationError("--M must be >= 1", "--M");
  const SubdividedGraph mg = subdivide(load_graph(o), o.M);
  Json j = to_json(mg);
  j["params"] = Json::object({{"M", o.M}});
  emit(o, j);
  if (!o.dot_path.empty()) write_text(o.dot_path, to_dot(mg.graph));
  return kOk;
}

int cmd_gadget(const Options& o) {
  if (o.M < 1) throw ValidationError("--M must be >= 1", "--M");
  const GadgetGraph h = build_gadget(load_graph(o), o.M, o.anchor);
  Json j = to_json(h);
  j["params"] = Json::object({{"M", o.M}, {"psi_anchor", o.anchor}});
  emit(o, j);
  if (!o.dot_path.empty()) write_text(o.dot_path, to_dot(h.graph));
  return kOk;
}

int cmd_audit_psi(const Options& o) {
  const GadgetGraph h = load_gadget(o);
  const PsiAudit a = audit_psi(h, o.threads);
  Json j = to_json(a);
  j["max_degree"] = max_degree(h.graph);
  j["params"] = Json::object({{"M", h.M}, {"psi_anchor", h.psi_anchor}});
  emit(o, j);
  if (!o.csv_path.empty()) {
    std::ofstream out(o.csv_path);
    if (!out) throw ConstructionError("cannot write '" + o.csv_path + "'");
    write_pair_csv(out, GraphMetric(h.base), GraphMetric(h.graph), psi(h));
  }
  return a.ok() && max_degree(h.graph) <= 3 ? kOk : kAuditFailed;
}

// phi0 is the polyline embedding restricted to the subdivision vertices.
struct PhiRun {
  PhiMap map;
  PhiAudit audit;
};

PhiRun run_phi(const GadgetGraph& h, const PolylineEmbedding& emb,
               const AuditOptions& options, double tol) {
  if (!(h.base == emb.testspace.graph)) {
    throw ValidationError("gadget base graph differs from the embedded graph", "gadget.base");
  }
  if (emb.edges.size() != h.edge_count()) {
    throw ValidationError("embedding does not cover every edge", "embedding.edges");
  }
  PhiMap map = phi(h, mg_positions(emb, h.M), emb.testspace.space());
  PhiAudit audit = audit_phi(h, map, options, tol);
  return {std::move(map), std::move(audit)};
}

int cmd_audit_phi(const Options& o) {
  require(o.embedding_path, "--embedding");
  const PolylineEmbedding emb =
      embedding_from_json(read_json_file(o.embedding_path), "embedding");
  GadgetGraph h;
  if (o.gadget_path.empty()) {
    const int m = o.M > 0 ? o.M : static_cast<int>(2 * emb.edges.size() + 1);
    h = build_gadget(emb.testspace.graph, m, o.anchor);
  } else {
    h = load_gadget(o);
  }
  const PhiRun run = run_phi(h, emb, audit_options(o), o.tol.value_or(1e-9));
  Json j = to_json(run.audit, run.map);
  j["params"] = Json::object({{"M", h.M}, {"psi_anchor", h.psi_anchor},
                              {"tol", o.tol.value_or(1e-9)},
                              {"audit", audit_params(o)}});
  emit(o, j);
  if (!o.csv_path.empty()) {
    std::ofstream out(o.csv_path);
    if (!out) throw ConstructionError("cannot write '" + o.csv_path + "'");
    write_pair_csv(out, GraphMetric(h.graph), NormMetric(run.map.space, run.map.points),
                   identity_map(run.map.points.size()));
  }
  return run.audit.ok() ? kOk : kAuditFailed;
}

int cmd_embed(const Options& o) {
  const TestspaceGraph tg = load_testspace_graph(o);
  const EmbedParams params = resolve_params(o, tg.space().dimension());
  PlaceOptions place;
  place.edge_limit = o.edge_limit;
  place.threads = o.threads;
  const PolylineEmbedding emb = place_edges(tg, params, place);
  const EmbeddingCheck check = verify_embedding(emb, o.threads);
  Json j = to_json(emb);
  j["verification"] = to_json(check);
  emit(o, j);
  return check.ok ? kOk : kAuditFailed;
}

int cmd_audit_tg(const Options& o) {
  require(o.embedding_path, "--embedding");
  const PolylineEmbedding emb =
      embedding_from_json(read_json_file(o.embedding_path), "embedding");
  if (emb.edges.size() != emb.testspace.graph.edge_count()) {
    throw ValidationError("embedding does not cover every edge", "embedding.edges");
  }
  const TgAudit a = audit_tg(emb, o.samples, o.seed, o.threads);
  Json j = to_json(a);
  j["params"] = Json::object({{"samples", o.samples}, {"seed", o.seed},
                              {"embedding", to_json(emb.params)}});
  emit(o, j);
  return a.forward_ok() && a.inverse_ok() ? kOk : kAuditFailed;
}

int cmd_montecarlo(const Options& o) {
  require(o.embedding_path, "--embedding");
  const PolylineEmbedding emb =
      embedding_from_json(read_json_file(o.embedding_path), "embedding");
  const auto edges = emb.testspace.graph.edges();
  if (o.edge >= edges.size()) throw ValidationError("edge index out of range", "--edge");
  if (o.edge > emb.edges.size()) {
    throw ValidationError("embedding stops before edge " + std::to_string(o.edge), "--edge");
  }
  const Placement placement = replay(emb, o.edge);
  const auto [u, v] = edges[o.edge];
  const SuitableFraction s =
      estimate_suitable_fraction(placement, u, v, o.samples, o.seed, o.threads);
  Json j = to_json(s);
  j["edge"] = o.edge;
  j["u"] = u;
  j["v"] = v;
  j["threshold"] = 0.25 - 3.0 * s.half_width();
  j["ok"] = s.fraction >= 0.25 - 3.0 * s.half_width();
  j["params"] = Json::object({{"samples", o.samples}, {"seed", o.seed},
                              {"embedding", to_json(emb.params)}});
  emit(o, j);
  return j["ok"].get<bool>() ? kOk : kAuditFailed;
}

int cmd_classify(const Options& o) {
  const Classification c = classify(load_graph(o));
  Json j = to_json(c);
  j["embeddability"] = to_string(c.verdict == Verdict::kNeither
                                     ? Embeddability::kNotEmbeddable
                                     : Embeddability::kPossiblyEmbeddable);
  emit(o, j);
  return kOk;
}

int cmd_pipeline(const Options& o) {
  const NormedSpace space = parse_space_descriptor(o.space);
  const AuditOptions audit = audit_options(o);

  const TestspaceGraph tg = build_testspace_graph(space, o.delta, o.r, NetOptions{o.mesh});
  const Json graph_audit = graph_audit_json(tg, audit);

  const EmbedParams params = resolve_params(o, space.dimension());
  PlaceOptions place;
  place.threads = o.threads;
  const PolylineEmbedding emb = place_edges(tg, params, place);
  const EmbeddingCheck check = verify_embedding(emb, o.threads);
  const TgAudit tg_audit = audit_tg(emb, o.samples, o.seed, o.threads);

  const int M = static_cast<int>(2 * tg.graph.edge_count() + 1);
  const GadgetGraph h = build_gadget(tg.graph, M, o.anchor);
  const PsiAudit psi_audit = audit_psi(h, o.threads);
  const double tol = o.tol.value_or(1e-9);
  const PhiRun phi_run = run_phi(h, emb, audit, tol);
  const Classification cls = classify(tg.graph);

  Json dossier;
  dossier["params"] = Json::object({{"space", to_json(space)},
                                    {"delta", o.delta},
                                    {"r", o.r},
                                    {"mesh", o.mesh},
                                    {"M", M},
                                    {"psi_anchor", o.anchor},
                                    {"embedding", to_json(params)},
                                    {"tg_samples", o.samples},
                                    {"phi_tol", tol},
                                    {"audit", audit_params(o)}});
  Json g;
  g["n"] = tg.graph.vertex_count();
  g["edges"] = tg.graph.edge_count();
  g["rho"] = tg.net.rho;
  g["covering_certificate"] = tg.net.covering_certificate;
  g["edge_threshold"] = tg.edge_threshold;
  g["audit"] = graph_audit;
  dossier["graph"] = g;
  Json e;
  e["verification"] = to_json(check);
  e["max_attempts"] = 0;
  std::size_t attempts = 0;
  for (const auto& rec : emb.edges) attempts = std::max(attempts, rec.attempts);
  e["max_attempts"] = attempts;
  e["tg_audit"] = to_json(tg_audit);
  dossier["embedding"] = e;
  Json gadget;
  gadget["vertices"] = h.graph.vertex_count();
  gadget["edges"] = h.graph.edge_count();
  gadget["max_degree"] = max_degree(h.graph);
  gadget["psi"] = to_json(psi_audit);
  gadget["phi"] = to_json(phi_run.audit, phi_run.map);
  dossier["gadget"] = gadget;
  dossier["classification"] = to_json(cls);

  const bool ok = graph_audit["ok"].get<bool>() && check.ok && tg_audit.forward_ok() &&
                  tg_audit.inverse_ok() && max_degree(h.graph) <= 3 && psi_audit.ok() &&
                  phi_run.audit.ok();
  dossier["ok"] = ok;

  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path dir(o.out_dir);
    Json gj = to_json(tg);
    gj["audit"] = graph_audit;
    write_json_file((dir / "graph.json").string(), gj);
    Json ej = to_json(emb);
    ej["verification"] = to_json(check);
    write_json_file((dir / "embedding.json").string(), ej);
    write_json_file((dir / "dossier.json").string(), dossier);
  }
  emit(o, dossier);
  return ok ? kOk : kAuditFailed;
}

void print_error(const char* kind, const std::string& field, const std::string& message) {
  Json j;
  j["error"] = Json::object({{"kind", kind}, {"field", field}, {"message", message}});
  std::cerr << j.dump() << '\n';
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Graph test-space construction and audit toolkit"};
  app.require_subcommand(1);
  Options o;
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker cap (0: TESTSPACE_THREADS or all cores)");

  auto space_opts = [&](CLI::App* c) {
    c->add_option("--space", o.space, "lp:<p|inf>:<dim> or l1sum:<a>+<b>");
    c->add_option("--delta", o.delta, "Net separation")->check(CLI::PositiveNumber);
    c->add_option("--r", o.r, "Ball radius")->check(CLI::PositiveNumber);
    c->add_option("--mesh", o.mesh, "Mesh divisor k (lattice (delta/k) Z^n)")
        ->check(CLI::PositiveNumber);
  };
  auto out_opt = [&](CLI::App* c) {
    c->add_option("-o,--output", o.output, "Output JSON (stdout when omitted)");
  };
  auto audit_opts = [&](CLI::App* c) {
    c->add_option("--exhaustive-cap", o.exhaustive_cap, "Exhaustive audit up to this many points");
    c->add_option("--sample-sources", o.sample_sources, "Sampled rows beyond the cap");
  };
  auto embed_opts = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "strict or practical");
    c->add_option("--mu", o.mu);
    c->add_option("--alpha", o.alpha);
    c->add_option("--beta", o.beta);
    c->add_option("--gamma", o.gamma);
    c->add_option("--C", o.C, "Constant of the strict gamma bound");
    c->add_option("--tol", o.tol, "Geometric tolerance");
    c->add_option("--retry-cap", o.retry_cap);
  };

  auto* net = app.add_subcommand("net", "Greedy delta-net of rB(X)");
  space_opts(net);
  out_opt(net);

  auto* graph = app.add_subcommand("graph", "Test-space graph G(X, delta, r) with its audit");
  space_opts(graph);
  graph->add_option("--net", o.net_path, "Net JSON (instead of --space)");
  graph->add_option("--dot", o.dot_path, "Also write DOT");
  audit_opts(graph);
  graph->add_option("--seed", o.seed, "Seed for sampled audits");
  out_opt(graph);

  auto* sub = app.add_subcommand("subdivide", "Subdivision MG");
  sub->add_option("--graph", o.graph_path)->required();
  sub->add_option("--M", o.M)->required();
  sub->add_option("--dot", o.dot_path);
  out_opt(sub);

  auto* gad = app.add_subcommand("gadget", "Degree-3 gadget graph H");
  gad->add_option("--graph", o.graph_path)->required();
  gad->add_option("--M", o.M)->required();
  gad->add_option("--anchor", o.anchor, "Short-path label psi maps to");
  gad->add_option("--dot", o.dot_path);
  out_opt(gad);

  auto* apsi = app.add_subcommand("audit-psi", "Audit psi: G -> H");
  apsi->add_option("--gadget", o.gadget_path);
  apsi->add_option("--graph", o.graph_path);
  apsi->add_option("--M", o.M);
  apsi->add_option("--anchor", o.anchor);
  apsi->add_option("--csv", o.csv_path, "Per-pair CSV");
  out_opt(apsi);

  auto* aphi = app.add_subcommand("audit-phi", "Audit phi: H -> X (+)_1 R");
  aphi->add_option("--embedding", o.embedding_path)->required();
  aphi->add_option("--gadget", o.gadget_path);
  aphi->add_option("--M", o.M, "Default 2e + 1");
  aphi->add_option("--anchor", o.anchor);
  aphi->add_option("--tol", o.tol, "Relative slack on ratios");
  aphi->add_option("--seed", o.seed);
  aphi->add_option("--csv", o.csv_path);
  audit_opts(aphi);
  out_opt(aphi);

  auto* emb = app.add_subcommand("embed", "Polyline embedding of a test-space graph");
  emb->add_option("--graph", o.graph_path);
  emb->add_option("--net", o.net_path);
  embed_opts(emb);
  emb->add_option("--seed", o.seed);
  emb->add_option("--edge-limit", o.edge_limit, "Place only the first k edges");
  out_opt(emb);

  auto* atg = app.add_subcommand("audit-tg", "Audit the thickening embedding");
  atg->add_option("--embedding", o.embedding_path)->required();
  atg->add_option("--samples", o.samples);
  atg->add_option("--seed", o.seed);
  out_opt(atg);

  auto* mc = app.add_subcommand("montecarlo", "Suitable share of B(z, mu) for one edge");
  mc->add_option("--embedding", o.embedding_path)->required();
  mc->add_option("--edge", o.edge, "Edge index; earlier edges form the placement")->required();
  mc->add_option("--samples", o.samples);
  mc->add_option("--seed", o.seed);
  out_opt(mc);

  auto* cls = app.add_subcommand("classify", "Path / complete / neither");
  cls->add_option("--graph", o.graph_path)->required();
  out_opt(cls);

  auto* pipe = app.add_subcommand("pipeline", "End-to-end construction and audit dossier");
  space_opts(pipe);
  embed_opts(pipe);
  audit_opts(pipe);
  pipe->add_option("--seed", o.seed);
  pipe->add_option("--samples", o.samples, "Interior samples for the TG audit");
  pipe->add_option("--anchor", o.anchor);
  pipe->add_option("--out-dir", o.out_dir, "Also write graph, embedding and dossier here");
  out_opt(pipe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // CLI11 prefixes messages about a specific option with its name.
    const std::string message = e.what();
    const auto colon = message.find(':');
    const std::string field =
        message.rfind("--", 0) == 0 && colon != std::string::npos ? message.substr(0, colon) : "";
    print_error("usage", field, message);
    return kInvalid;
  }

  o.threads = threads;
  if (threads > 0) set_default_threads(threads);

  try {
    if (*net) return cmd_net(o);
    if (*graph) return cmd_graph(o);
    if (*sub) return cmd_subdivide(o);
    if (*gad) return cmd_gadget(o);
    if (*apsi) return cmd_audit_psi(o);
    if (*aphi) return cmd_audit_phi(o);
    if (*emb) return cmd_embed(o);
    if (*atg) return cmd_audit_tg(o);
    if (*mc) return cmd_montecarlo(o);
    if (*cls) return cmd_classify(o);
    if (*pipe) return cmd_pipeline(o);
  } catch (const ValidationError& e) {
    print_error("validation", e.field(), e.what());
    return kInvalid;
  } catch (const PlacementError& e) {
    print_error("construction", "edge[" + std::to_string(e.edge) + "]", e.what());
    return kRuntime;
  } catch (const ConstructionError& e) {
    print_error("construction", "", e.what());
    return kRuntime;
  } catch (const std::exception& e) {
    print_error("runtime", "", e.what());
    return kRuntime;
  }
  return kInvalid;
}

}  // namespace testspace
