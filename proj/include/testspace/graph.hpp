#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace testspace {

// Simple undirected unweighted graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}
  // Throws ValidationError on loops, duplicate edges or out-of-range ids.
  static Graph from_edges(std::size_t vertex_count,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Adds {u, v}; returns false if it was already present.
  bool add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

inline constexpr std::int32_t kUnreachable = -1;

// Hop distances from `source`; kUnreachable for other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, std::size_t source);

// Dense all-pairs hop-distance table.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int32_t operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::int32_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::int32_t> data_;
};

// Exact APSP by one BFS per vertex. Throws ValidationError if g is
// disconnected.
DistanceMatrix bfs_apsp(const Graph& g, unsigned threads = 0);

std::size_t max_degree(const Graph& g);
bool is_connected(const Graph& g);

// Graphviz export. `labels` may be empty.
std::string to_dot(const Graph& g, const std::vector<std::string>& labels = {});

}  // namespace testspace
