#include "testspace/metric.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "testspace/error.hpp"
#include "testspace/parallel.hpp"
#include "testspace/rng.hpp"

namespace testspace {

std::vector<double> FiniteMetric::row(std::size_t i) const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = distance(i, j);
  return out;
}

GraphMetric::GraphMetric(const Graph& g) : graph_(&g) {}

GraphMetric::GraphMetric(const Graph& g,
                         std::shared_ptr<const DistanceMatrix> table)
    : graph_(&g), table_(std::move(table)) {
  if (table_ && table_->size() != g.vertex_count()) {
    throw ValidationError("distance table does not match graph");
  }
}

double GraphMetric::distance(std::size_t i, std::size_t j) const {
  if (table_) return (*table_)(i, j);
  const auto d = bfs_distances(*graph_, i)[j];
  if (d == kUnreachable) throw ValidationError("graph is disconnected", "edges");
  return d;
}

std::vector<double> GraphMetric::row(std::size_t i) const {
  std::vector<double> out(size());
  if (table_) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*table_)(i, j);
    return out;
  }
  const auto hops = bfs_distances(*graph_, i);
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (hops[j] == kUnreachable) throw ValidationError("graph is disconnected", "edges");
    out[j] = hops[j];
  }
  return out;
}

std::vector<double> ScaledMetric::row(std::size_t i) const {
  auto out = base_.row(i);
  for (double& d : out) d *= factor_;
  return out;
}

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return m;
}

std::vector<std::size_t> select_audit_rows(std::size_t n,
                                           const AuditOptions& options) {
  std::vector<std::size_t> all = identity_map(n);
  if (n <= options.exhaustive_cap) return all;
  Rng rng(options.seed);
  const std::size_t k = std::min(options.sample_sources, n);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(all[i], all[i + rng.index(n - i)]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

void validate_map(const FiniteMetric& source, const FiniteMetric& target,
                  const std::vector<std::size_t>& vertex_map) {
  if (source.size() < 2) throw ValidationError("audit needs at least two points");
  if (vertex_map.size() != source.size()) {
    throw ValidationError("vertex map size does not match the source", "vertex_map");
  }
  std::vector<char> hit(target.size(), 0);
  for (std::size_t v : vertex_map) {
    if (v >= target.size()) throw ValidationError("vertex map out of range", "vertex_map");
    if (hit[v]) throw ValidationError("vertex map is not injective", "vertex_map");
    hit[v] = 1;
  }
}

struct RowResult {
  double forward = 0.0;
  double inverse = 0.0;
  IndexPair forward_pair{0, 0};
  IndexPair inverse_pair{0, 0};
  std::size_t pairs = 0;
};

RowResult audit_row(const FiniteMetric& source, const FiniteMetric& target,
                    const std::vector<std::size_t>& vertex_map, std::size_t i,
                    bool upper_only) {
  RowResult res;
  const auto srow = source.row(i);
  const auto trow = target.row(vertex_map[i]);
  for (std::size_t j = upper_only ? i + 1 : 0; j < srow.size(); ++j) {
    if (j == i) continue;
    const double ds = srow[j];
    const double dt = trow[vertex_map[j]];
    if (!(ds > 0.0)) {
      throw ValidationError("zero source distance between distinct points " +
                            std::to_string(i) + " and " + std::to_string(j));
    }
    const double fwd = dt / ds;
    const double inv = dt > 0.0 ? ds / dt : std::numeric_limits<double>::infinity();
    const IndexPair pair = i < j ? IndexPair{i, j} : IndexPair{j, i};
    if (fwd > res.forward) {
      res.forward = fwd;
      res.forward_pair = pair;
    }
    if (inv > res.inverse) {
      res.inverse = inv;
      res.inverse_pair = pair;
    }
    ++res.pairs;
  }
  return res;
}

}  // namespace

DistortionReport audit(const FiniteMetric& source, const FiniteMetric& target,
                       const std::vector<std::size_t>& vertex_map,
                       const AuditOptions& options) {
  validate_map(source, target, vertex_map);
  const std::size_t n = source.size();
  DistortionReport report;
  const std::vector<std::size_t> rows = select_audit_rows(n, options);
  const bool upper_only = n <= options.exhaustive_cap;
  report.exhaustive = upper_only;
  std::vector<RowResult> results(rows.size());
  parallel_for(rows.size(), options.threads, [&](std::size_t k) {
    results[k] = audit_row(source, target, vertex_map, rows[k], upper_only);
  });
  for (const auto& r : results) {
    if (r.forward > report.lip_forward) {
      report.lip_forward = r.forward;
      report.witness_forward = r.forward_pair;
    }
    if (r.inverse > report.lip_inverse) {
      report.lip_inverse = r.inverse;
      report.witness_inverse = r.inverse_pair;
    }
    report.pairs_checked += r.pairs;
  }
  report.distortion = report.lip_forward * report.lip_inverse;
  return report;
}

void write_pair_csv(std::ostream& out, const FiniteMetric& source,
                    const FiniteMetric& target,
                    const std::vector<std::size_t>& vertex_map) {
  validate_map(source, target, vertex_map);
  out.precision(17);
  out << "pair_u,pair_v,d_source,d_target,ratio\n";
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto srow = source.row(i);
    const auto trow = target.row(vertex_map[i]);
    for (std::size_t j = i + 1; j < source.size(); ++j) {
      const double dt = trow[vertex_map[j]];
      out << i << ',' << j << ',' << srow[j] << ',' << dt << ',' << dt / srow[j]
          << '\n';
    }
  }
}

}  // namespace testspace
