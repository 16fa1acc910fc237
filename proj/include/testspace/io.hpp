#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "testspace/classifier.hpp"
#include "testspace/edge_embedder.hpp"
#include "testspace/gadget.hpp"
#include "testspace/graph.hpp"
#include "testspace/metric.hpp"
#include "testspace/net.hpp"
#include "testspace/normed_space.hpp"
#include "testspace/testspace_graph.hpp"

namespace testspace {

using Json = nlohmann::ordered_json;

// Readers throw ValidationError whose field() is the JSON path of the
// offending member, e.g. "net.points[3]".

Json to_json(const NormedSpace& space);
NormedSpace space_from_json(const Json& j, const std::string& path = "space");

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& path);

Json to_json(const Net& net);
Net net_from_json(const Json& j, const std::string& path = "net");

// {"n": v, "edges": [[i, j], ...], "coords": [...]} (coords optional).
Json graph_to_json(const Graph& g, const std::vector<Vector>* coords = nullptr);
Graph graph_from_json(const Json& j, const std::string& path = "graph");

Json to_json(const TestspaceGraph& tg);
// Accepts a test-space graph document; re-checks the edge rule.
TestspaceGraph testspace_graph_from_json(const Json& j,
                                         const std::string& path = "graph");

Json to_json(const DistortionReport& r);
Json to_json(const PathBoundReport& r);
Json to_json(const IdentityAudit& a);

Json to_json(const SubdividedGraph& mg);
Json to_json(const GadgetGraph& h);
// Rebuilds from base graph, M and psi_anchor, then checks the stored tables.
GadgetGraph gadget_from_json(const Json& j, const std::string& path = "gadget");
Json to_json(const PsiAudit& a);
Json to_json(const PhiAudit& a, const PhiMap& map);

Json to_json(const EmbedParams& p);
EmbedParams params_from_json(const Json& j, const std::string& path = "params");
Json to_json(const PolylineEmbedding& e);
PolylineEmbedding embedding_from_json(const Json& j,
                                      const std::string& path = "embedding");
Json to_json(const EmbeddingCheck& c);
Json to_json(const TgAudit& a);
Json to_json(const SuitableFraction& s);

Json to_json(const Classification& c);

// Numbers that may be infinite serialize as the string "inf".
Json number(double x);

Json read_json_file(const std::string& path);
// Writes j.dump(2) plus a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace testspace
