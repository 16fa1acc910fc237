#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "testspace/graph.hpp"

namespace testspace {

enum class Verdict { kPath, kComplete, kNeither };

enum class CertificateKind {
  // A cycle of length >= 4 (the whole graph, which is 2-regular).
  kCycle,
  // center has neighbors u1, u2, u3 with u1u2 and u2u3 missing: center would
  // be the midpoint of both [u1, u2] and [u2, u3].
  kDoubleMidpoint,
  // center has neighbors u1, u2, u3 where only u1u3 is missing: center and u2
  // would both be midpoints of [u1, u3].
  kSharedMidpoint,
};

struct Certificate {
  CertificateKind kind = CertificateKind::kCycle;
  std::vector<std::size_t> cycle;
  std::size_t center = 0;
  std::size_t u1 = 0;
  std::size_t u2 = 0;
  std::size_t u3 = 0;
};

struct Classification {
  Verdict verdict = Verdict::kNeither;
  // Both a path and a complete graph (K1, K2, K3 = C3).
  bool both = false;
  std::optional<Certificate> certificate;  // present iff verdict is kNeither
};

// Path, complete graph, or an obstruction to isometric embedding into a
// strictly convex space. Witnesses are the lowest-index ones. Throws
// ValidationError on empty or disconnected input.
Classification classify(const Graph& g);

enum class Embeddability { kPossiblyEmbeddable, kNotEmbeddable };

Embeddability embeddability_verdict(const Graph& g);

// Re-checks a certificate against the adjacency structure.
bool certificate_holds(const Graph& g, const Certificate& c);

std::string to_string(Verdict v);
std::string to_string(CertificateKind k);
std::string to_string(Embeddability e);

}  // namespace testspace
