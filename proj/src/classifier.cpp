#include "testspace/classifier.hpp"

#include <algorithm>

#include "testspace/error.hpp"

namespace testspace {

namespace {

bool is_complete(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

std::vector<std::size_t> walk_cycle(const Graph& g) {
  std::vector<std::size_t> cycle{0};
  std::size_t prev = 0;
  std::size_t cur = g.neighbors(0).front();
  while (cur != 0) {
    cycle.push_back(cur);
    const auto& nb = g.neighbors(cur);
    const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

std::optional<Certificate> midpoint_certificate(const Graph& g, std::size_t v) {
  const auto& nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      const std::size_t x = nb[i];
      const std::size_t y = nb[j];
      if (g.has_edge(x, y)) continue;
      const std::size_t z = *std::find_if(nb.begin(), nb.end(), [&](std::size_t c) {
        return c != x && c != y;
      });
      Certificate c;
      c.center = v;
      if (!g.has_edge(z, x)) {
        c.kind = CertificateKind::kDoubleMidpoint;
        c.u1 = y;
        c.u2 = x;
        c.u3 = z;
      } else if (!g.has_edge(z, y)) {
        c.kind = CertificateKind::kDoubleMidpoint;
        c.u1 = x;
        c.u2 = y;
        c.u3 = z;
      } else {
        c.kind = CertificateKind::kSharedMidpoint;
        c.u1 = x;
        c.u2 = z;
        c.u3 = y;
      }
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

Classification classify(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw ValidationError("graph has no vertices", "n");
  if (!is_connected(g)) throw ValidationError("graph is disconnected", "edges");
  Classification out;
  if (n <= 2) {
    out.verdict = Verdict::kPath;
    out.both = true;
    return out;
  }
  if (is_complete(g)) {
    out.verdict = Verdict::kComplete;
    out.both = n == 3;
    return out;
  }
  const std::size_t top = max_degree(g);
  if (top <= 2 && g.edge_count() == n - 1) {
    out.verdict = Verdict::kPath;
    return out;
  }
  out.verdict = Verdict::kNeither;
  if (top <= 2) {
    Certificate c;
    c.kind = CertificateKind::kCycle;
    c.cycle = walk_cycle(g);
    out.certificate = c;
    return out;
  }
  // Connected, not complete: if every vertex of degree >= 3 had a clique
  // neighborhood, the clique would absorb its neighbors' neighbors and the
  // graph would be complete. So a witness exists.
  for (std::size_t v = 0; v < n; ++v) {
    if (g.degree(v) < 3) continue;
    if (auto c = midpoint_certificate(g, v)) {
      out.certificate = c;
      return out;
    }
  }
  throw ConstructionError("classifier found no obstruction in a non-complete graph");
}

Embeddability embeddability_verdict(const Graph& g) {
  return classify(g).verdict == Verdict::kNeither ? Embeddability::kNotEmbeddable
                                                  : Embeddability::kPossiblyEmbeddable;
}

bool certificate_holds(const Graph& g, const Certificate& c) {
  const std::size_t n = g.vertex_count();
  if (c.kind == CertificateKind::kCycle) {
    const auto& cyc = c.cycle;
    if (cyc.size() < 4) return false;
    std::vector<std::size_t> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] >= n || !g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
    }
    return true;
  }
  const std::size_t ids[4] = {c.center, c.u1, c.u2, c.u3};
  for (std::size_t x : ids) {
    if (x >= n) return false;
  }
  if (c.u1 == c.u2 || c.u2 == c.u3 || c.u1 == c.u3) return false;
  for (std::size_t x : {c.u1, c.u2, c.u3}) {
    if (!g.has_edge(c.center, x)) return false;
  }
  if (c.kind == CertificateKind::kDoubleMidpoint) {
    return !g.has_edge(c.u1, c.u2) && !g.has_edge(c.u2, c.u3);
  }
  return !g.has_edge(c.u1, c.u3) && g.has_edge(c.u1, c.u2) && g.has_edge(c.u2, c.u3);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPath: return "Path";
    case Verdict::kComplete: return "Complete";
    case Verdict::kNeither: return "Neither";
  }
  return {};
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::kCycle: return "cycle";
    case CertificateKind::kDoubleMidpoint: return "double_midpoint";
    case CertificateKind::kSharedMidpoint: return "shared_midpoint";
  }
  return {};
}

std::string to_string(Embeddability e) {
  return e == Embeddability::kNotEmbeddable ? "NotEmbeddable" : "PossiblyEmbeddable";
}

}  // namespace testspace
