#include "testspace/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "testspace/error.hpp"
#include "testspace/parallel.hpp"

namespace testspace {

Graph Graph::from_edges(
    std::size_t vertex_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw ValidationError("edge endpoint out of range", "edges");
    }
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u), "edges");
    if (!g.add_edge(u, v)) {
      throw ValidationError("duplicate edge {" + std::to_string(u) + ", " +
                                std::to_string(v) + "}",
                            "edges");
    }
  }
  return g;
}

bool Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= adjacency_.size() || v >= adjacency_.size()) {
    throw ValidationError("edge endpoint out of range", "edges");
  }
  if (u == v) throw ValidationError("self-loop", "edges");
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  const auto& nu = adjacency_.at(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, std::size_t source) {
  std::vector<std::int32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<std::size_t> queue;
  queue.reserve(g.vertex_count());
  dist.at(source) = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

DistanceMatrix bfs_apsp(const Graph& g, unsigned threads) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix table(n);
  bool disconnected = false;
  std::vector<char> bad(n, 0);
  parallel_for(n, threads, [&](std::size_t s) {
    const auto row = bfs_distances(g, s);
    for (std::size_t t = 0; t < n; ++t) {
      if (row[t] == kUnreachable) bad[s] = 1;
      table(s, t) = row[t];
    }
  });
  disconnected = std::any_of(bad.begin(), bad.end(), [](char c) { return c != 0; });
  if (disconnected) throw ValidationError("graph is disconnected", "edges");
  return table;
}

std::size_t max_degree(const Graph& g) {
  std::size_t m = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) m = std::max(m, g.degree(v));
  return m;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::int32_t d) { return d == kUnreachable; });
}

std::string to_dot(const Graph& g, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "graph G {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v;
    if (v < labels.size() && !labels[v].empty()) {
      os << " [label=\"" << labels[v] << "\"]";
    }
    os << ";\n";
  }
  for (const auto& [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace testspace
