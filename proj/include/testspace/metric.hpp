#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "testspace/graph.hpp"
#include "testspace/normed_space.hpp"

namespace testspace {

// A finite metric space on indices [0, size()).
class FiniteMetric {
 public:
  virtual ~FiniteMetric() = default;
  virtual std::size_t size() const = 0;
  virtual double distance(std::size_t i, std::size_t j) const = 0;
  // Distances from i to every point. Override when a row is cheaper than
  // size() separate queries (BFS).
  virtual std::vector<double> row(std::size_t i) const;
};

// Shortest-path metric of a connected graph. Rows come from an APSP table when
// one is supplied, otherwise from a BFS per request.
class GraphMetric final : public FiniteMetric {
 public:
  explicit GraphMetric(const Graph& g);
  GraphMetric(const Graph& g, std::shared_ptr<const DistanceMatrix> table);

  std::size_t size() const override { return graph_->vertex_count(); }
  double distance(std::size_t i, std::size_t j) const override;
  std::vector<double> row(std::size_t i) const override;

 private:
  const Graph* graph_;
  std::shared_ptr<const DistanceMatrix> table_;
};

// Points of a normed space with the norm distance.
class NormMetric final : public FiniteMetric {
 public:
  NormMetric(NormedSpace space, std::vector<Vector> points)
      : space_(std::move(space)), points_(std::move(points)) {}

  std::size_t size() const override { return points_.size(); }
  double distance(std::size_t i, std::size_t j) const override {
    return space_.distance(points_[i], points_[j]);
  }
  const std::vector<Vector>& points() const noexcept { return points_; }
  const NormedSpace& space() const noexcept { return space_; }

 private:
  NormedSpace space_;
  std::vector<Vector> points_;
};

// Distances scaled by a positive constant.
class ScaledMetric final : public FiniteMetric {
 public:
  ScaledMetric(const FiniteMetric& base, double factor)
      : base_(base), factor_(factor) {}
  std::size_t size() const override { return base_.size(); }
  double distance(std::size_t i, std::size_t j) const override {
    return factor_ * base_.distance(i, j);
  }
  std::vector<double> row(std::size_t i) const override;

 private:
  const FiniteMetric& base_;
  double factor_;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

// Bilipschitz constants of a vertex map f between finite metrics:
// lip_forward = max d_T(f u, f v) / d_S(u, v), lip_inverse = max of the
// reciprocal ratio, distortion = their product (scale invariant).
struct DistortionReport {
  double lip_forward = 0.0;
  double lip_inverse = 0.0;
  double distortion = 0.0;
  IndexPair witness_forward{0, 0};
  IndexPair witness_inverse{0, 0};
  std::size_t pairs_checked = 0;
  bool exhaustive = true;
};

struct AuditOptions {
  // Exhaustive over all pairs up to this many source points; above it, rows
  // from `sample_sources` random sources are audited against every point.
  std::size_t exhaustive_cap = 2000;
  std::size_t sample_sources = 64;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

DistortionReport audit(const FiniteMetric& source, const FiniteMetric& target,
                       const std::vector<std::size_t>& vertex_map,
                       const AuditOptions& options = {});

// Per-pair rows (pair_u, pair_v, d_source, d_target, ratio) for every pair of
// the source, ratio = d_target / d_source.
void write_pair_csv(std::ostream& out, const FiniteMetric& source,
                    const FiniteMetric& target,
                    const std::vector<std::size_t>& vertex_map);

std::vector<std::size_t> identity_map(std::size_t n);

// Source rows an audit of n points visits: all of them up to the exhaustive
// cap, otherwise a seeded random subset in ascending order.
std::vector<std::size_t> select_audit_rows(std::size_t n,
                                           const AuditOptions& options);

}  // namespace testspace
