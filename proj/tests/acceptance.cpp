// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "testspace/classifier.hpp"
#include "testspace/cli.hpp"
#include "testspace/edge_embedder.hpp"
#include "testspace/gadget.hpp"
#include "testspace/io.hpp"
#include "testspace/testspace_graph.hpp"

using namespace testspace;

namespace {

// Pinned tolerances.
constexpr double kRationalTol = 1e-12;  // criteria 1 and 7
constexpr double kPhiTol = 1e-9;        // criterion 6
constexpr double kPracticalBeta = 0.02;
constexpr std::size_t kTgSamples = 10'000;
constexpr std::size_t kVolumeSamples = 100'000;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.1fs) %s\n", id, out.pass ? "PASS" : "FAIL", title, secs,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

const std::vector<std::string> kSpaces{"lp:1:2", "lp:2:2", "lp:inf:2", "lp:2:3", "lp:inf:3"};

AuditOptions exhaustive(std::size_t n) {
  AuditOptions o;
  o.exhaustive_cap = std::max<std::size_t>(n, 2);
  return o;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Outcome criterion1() {
  Outcome out;
  double worst = 0.0;
  for (const auto& d : kSpaces) {
    for (double r : {2.0, 3.0}) {
      const TestspaceGraph tg = build_testspace_graph(parse_space_descriptor(d), 1.0, r);
      const IdentityAudit a = audit_identity_embedding(tg, exhaustive(tg.graph.vertex_count()));
      const PathBoundReport path = verify_path_bound(tg);
      worst = std::max(worst, a.report.distortion);
      const bool ok = a.report.exhaustive && a.report.distortion <= 3.0 * (1 + kRationalTol) &&
                      a.report.lip_forward <= 3.0 * tg.net.rho * (1 + kRationalTol) && path.ok;
      if (!ok) {
        out.pass = false;
        out.detail += d + " r=" + fmt(r) + " distortion=" + fmt(a.report.distortion) +
                      " rho=" + fmt(tg.net.rho) + (path.ok ? "" : " path-bound") + "; ";
      }
    }
  }
  out.detail = "max distortion " + fmt(worst) + " over 10 instances; " + out.detail;
  return out;
}

Outcome criterion2() {
  Outcome out;
  std::string detail;
  for (const auto& d : kSpaces) {
    for (double r : {2.0, 3.0}) {
      const TestspaceGraph tg = build_testspace_graph(parse_space_descriptor(d), 1.0, r);
      const std::size_t deg = max_degree(tg.graph);
      const double bound = std::pow(7.0, static_cast<double>(tg.space().dimension()));
      if (static_cast<double>(deg) > bound) out.pass = false;
      detail += d + "/" + fmt(r) + ":" + std::to_string(deg) + "<=" + fmt(bound) + " ";
    }
  }
  out.detail = detail;
  return out;
}

Outcome criterion3() {
  Outcome out;
  const TestspaceGraph plane = build_testspace_graph(NormedSpace::lp(2, 2), 1.0, 2.0);
  std::vector<std::pair<std::string, Graph>> graphs{{"K3", complete(3)}, {"G(l2^2,1,2)", plane.graph}};
  for (const auto& [name, g] : graphs) {
    const int e = static_cast<int>(g.edge_count());
    for (int M : {e, e + 1, 10 * e}) {
      const GadgetGraph h = build_gadget(g, M);
      const PsiAudit a = audit_psi(h);
      const bool ok = max_degree(h.graph) <= 3 && a.ok() && a.report.exhaustive;
      out.detail += name + " M=" + std::to_string(M) + (ok ? " ok; " : " FAILED; ");
      out.pass = out.pass && ok;
    }
  }
  return out;
}

Outcome criterion4() {
  Outcome out;
  for (const char* d : {"lp:2:3", "lp:inf:3"}) {
    const TestspaceGraph tg = build_testspace_graph(parse_space_descriptor(d), 1.0, 2.0);
    EmbedParams p = default_practical_params(kPracticalBeta);
    p.seed = kSeed;
    const PolylineEmbedding emb = place_edges(tg, p);
    std::size_t max_attempts = 0;
    for (const auto& rec : emb.edges) max_attempts = std::max(max_attempts, rec.attempts);
    const EmbeddingCheck check = verify_embedding(emb);
    const TgAudit a = audit_tg(emb, kTgSamples, kSeed);
    // The stated target is 1001; 1 + 6/gamma with gamma = beta/20 is 6001.
    const bool ok = emb.edges.size() == tg.graph.edge_count() && check.ok &&
                    a.lip_forward <= 4.0 && a.lip_inverse <= 1001.0 &&
                    a.lip_inverse <= a.inverse_bound;
    out.pass = out.pass && ok;
    out.detail += std::string(d) + ": edges=" + std::to_string(emb.edges.size()) +
                  " max_attempts=" + std::to_string(max_attempts) +
                  " verify=" + (check.ok ? "ok" : check.failed_condition) +
                  " lip_fwd=" + fmt(a.lip_forward) + " lip_inv=" + fmt(a.lip_inverse) +
                  " (<=1001, 1+6/gamma=" + fmt(a.inverse_bound) + "); ";
  }
  return out;
}

Outcome criterion5() {
  Outcome out;
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(2, 3), 1.0, 2.0);
  EmbedParams p = default_strict_params(3);
  p.seed = kSeed;
  PlaceOptions opt;
  opt.edge_limit = 5;
  const PolylineEmbedding emb = place_edges(tg, p, opt);
  const auto edges = tg.graph.edges();
  for (std::size_t k = 0; k < 5; ++k) {
    const Placement pl = replay(emb, k);
    const SuitableFraction f = estimate_suitable_fraction(pl, edges[k].first, edges[k].second,
                                                          kVolumeSamples, kSeed + k);
    const double need = 0.25 - 3.0 * f.half_width();
    out.pass = out.pass && f.fraction >= need;
    out.detail += "edge" + std::to_string(k) + "=" + fmt(f.fraction) + ">=" + fmt(need) + " ";
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  const TestspaceGraph tg = build_testspace_graph(NormedSpace::lp(2, 3), 1.0, 1.2);
  const std::size_t e = tg.graph.edge_count();
  const int M = static_cast<int>(2 * e + 1);
  EmbedParams p = default_practical_params(kPracticalBeta);
  p.seed = kSeed;
  const PolylineEmbedding emb = place_edges(tg, p);
  const GadgetGraph h = build_gadget(tg.graph, M);
  const PhiMap map = phi(h, mg_positions(emb, M), tg.space());
  AuditOptions opt;
  opt.exhaustive_cap = h.graph.vertex_count();
  const PhiAudit a = audit_phi(h, map, opt, kPhiTol);
  const double inv_bound = 2.0 * a.phi0_report.lip_inverse;
  out.pass = a.report.exhaustive && a.phi0_report.exhaustive &&
             a.report.lip_forward <= 1.0 * (1 + kPhiTol) &&
             a.report.lip_inverse <= inv_bound * (1 + kPhiTol) && !a.case_violation;
  out.detail = "n=" + std::to_string(tg.graph.vertex_count()) + " e=" + std::to_string(e) +
               " M=" + std::to_string(M) + " |H|=" + std::to_string(h.graph.vertex_count()) +
               " lip=" + fmt(a.report.lip_forward) + " lip_inv=" + fmt(a.report.lip_inverse) +
               " <= 2*lip(phi0^-1)=" + fmt(inv_bound) + " normalization=" + fmt(map.normalization);
  return out;
}

Outcome criterion7() {
  Outcome out;
  const Graph k3 = complete(3);
  const Thickening tg(k3);
  // K3 drawn as a unit triangle in l2^3, placed in practical mode.
  const TestspaceGraph tri = build_testspace_graph(
      Net{NormedSpace::lp(2, 3), 1.0, 2.0, 4,
          {Vector{0, 0, 0}, Vector{1, 0, 0}, Vector{0.5, std::sqrt(3.0) / 2, 0}}, 1.0, 1.0});
  EmbedParams p = default_practical_params(kPracticalBeta);
  const PolylineEmbedding emb = place_edges(tri, p);
  double worst = 0.0, worst_image = 0.0;
  for (int M = 1; M <= 8; ++M) {
    const SubdividedGraph mg = subdivide(k3, M);
    const auto pts = mg_tg_points(tg, mg);
    const auto d = bfs_apsp(mg.graph);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        worst = std::max(worst, std::abs(tg_distance(tg, pts[i], pts[j]) - d(i, j) / double(M)));
    const auto images = mg_positions(emb, M);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      worst_image = std::max(worst_image, tri.space().distance(images[i], curve_point(emb, pts[i])));
    }
  }
  out.pass = worst <= kRationalTol && worst_image <= kRationalTol;
  out.detail = "max |d_TG - d_MG/M| = " + fmt(worst) + ", max image gap = " + fmt(worst_image);
  return out;
}

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

Outcome criterion8() {
  Outcome out;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 7 && out.pass; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      Graph g(n);
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (mask >> k & 1u) g.add_edge(slots[k].first, slots[k].second);
      if (!is_connected(g)) continue;
      ++checked;
      const bool is_path = brute_is_path(g);
      const bool is_complete = g.edge_count() == n * (n - 1) / 2;
      const Classification c = classify(g);
      // K3 is also the cycle C3.
      bool ok = c.both == ((is_path && is_complete) || (is_complete && n == 3));
      if (is_path && is_complete) {
        ok = ok && c.verdict != Verdict::kNeither;
      } else if (is_complete) {
        ok = ok && c.verdict == Verdict::kComplete;
      } else if (is_path) {
        ok = ok && c.verdict == Verdict::kPath;
      } else {
        ok = ok && c.verdict == Verdict::kNeither && c.certificate &&
             certificate_holds(g, *c.certificate);
      }
      if (!ok) {
        out.pass = false;
        out.detail = "mismatch at n=" + std::to_string(n) + " mask=" + std::to_string(mask) + "; ";
        break;
      }
    }
  }
  Graph p5(5), c4(4), c3(3), claw(4);
  for (std::size_t i = 0; i < 4; ++i) p5.add_edge(i, i + 1);
  for (std::size_t i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  for (std::size_t i = 0; i < 3; ++i) c3.add_edge(i, (i + 1) % 3);
  for (std::size_t i = 1; i < 4; ++i) claw.add_edge(0, i);
  const bool fixed = classify(complete(4)).verdict == Verdict::kComplete &&
                     classify(p5).verdict == Verdict::kPath &&
                     classify(c4).verdict == Verdict::kNeither &&
                     classify(c3).verdict == Verdict::kComplete && classify(c3).both &&
                     classify(claw).verdict == Verdict::kNeither;
  out.pass = out.pass && fixed;
  out.detail += std::to_string(checked) + " connected labeled graphs; fixed verdicts " +
                (fixed ? "ok" : "FAILED");
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion9() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "testspace_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    std::vector<std::string> args{"testspace", "pipeline", "--space", "lp:2:3",
                                  "--delta", "1", "--r", "2", "--seed", "7",
                                  "--out-dir", dir.string(),
                                  "-o", (root / ("dossier" + std::to_string(run) + ".json")).string()};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    codes[run] = run_cli(static_cast<int>(argv.size()), argv.data());
  }
  Outcome out;
  bool same = slurp(root / "dossier0.json") == slurp(root / "dossier1.json");
  for (const char* f : {"graph.json", "embedding.json", "dossier.json"}) {
    same = same && slurp(root / "run0" / f) == slurp(root / "run1" / f) &&
           !slurp(root / "run0" / f).empty();
  }
  const Json d = read_json_file((root / "dossier0.json").string());
  out.pass = same && codes[0] == 0 && codes[1] == 0;
  out.detail = std::string("artifacts ") + (same ? "identical" : "DIFFER") +
               ", exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) +
               ", dossier ok=" + (d["ok"].get<bool>() ? "true" : "false") +
               ", distortion(G->X)=" + fmt(d["graph"]["audit"]["identity"]["distortion"].get<double>()) +
               ", max_degree(H)=" + std::to_string(d["gadget"]["max_degree"].get<int>());
  return out;
}

}  // namespace

int main() {
  report(1, "net graph distortion <= 3", criterion1);
  report(2, "degree <= 7^dim", criterion2);
  report(3, "gadget degree and psi bounds", criterion3);
  report(4, "practical polyline embedding", criterion4);
  report(5, "strict suitable volume >= 1/4", criterion5);
  report(6, "phi composition bounds", criterion6);
  report(7, "MG-TG isometry", criterion7);
  report(8, "classifier brute force", criterion8);
  report(9, "pipeline reproducibility", criterion9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
