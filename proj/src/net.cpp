#include "testspace/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "testspace/error.hpp"
#include "testspace/spatial_index.hpp"

namespace testspace {

namespace {

struct Lattice {
  std::size_t dimension = 0;
  double mesh = 0.0;
  std::int64_t extent = 0;  // indices run over [-extent, extent]
  int divisor = 1;

  Vector point(const std::vector<std::int64_t>& m, double delta) const {
    Vector p(dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
      p[i] = static_cast<double>(m[i]) * delta / divisor;
    }
    return p;
  }
};

Lattice make_lattice(const NormedSpace& space, double delta, double r,
                     int mesh_divisor) {
  Lattice lat;
  lat.dimension = space.dimension();
  lat.divisor = mesh_divisor;
  lat.mesh = delta / mesh_divisor;
  lat.extent = static_cast<std::int64_t>(
      std::floor(r * space.box_factor() / lat.mesh + 1e-9));
  return lat;
}

// Visits index vectors of [-extent, extent]^n in lexicographic order (first
// coordinate most significant).
template <class Visit>
void for_each_index(std::size_t n, std::int64_t extent, Visit&& visit) {
  std::vector<std::int64_t> m(n, -extent);
  while (true) {
    visit(m);
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (++m[axis] <= extent) break;
      m[axis] = -extent;
      if (axis == 0) return;
    }
  }
}

void validate_net_args(double delta, double r, int mesh_divisor) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta must be positive", "delta");
  }
  if (!(r > delta) || !std::isfinite(r)) {
    throw ValidationError("r must exceed delta", "r");
  }
  if (mesh_divisor < 2) throw ValidationError("mesh divisor must be >= 2", "mesh");
}

std::vector<Vector> corners_of(const Vector& lo, double size) {
  const std::size_t n = lo.size();
  std::vector<Vector> corners;
  corners.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector c = lo;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) c[i] += size;
    }
    corners.push_back(std::move(c));
  }
  return corners;
}

class CoveringBound {
 public:
  CoveringBound(const NormedSpace& space, const std::vector<Vector>& points,
                double r, double target, int refine_depth, double cell_hint)
      : space_(space),
        points_(points),
        r_(r),
        target_(target),
        refine_depth_(refine_depth),
        index_(space.dimension(), std::max(cell_hint, 1e-12)) {
    for (std::size_t i = 0; i < points_.size(); ++i) index_.insert(i, points_[i]);
  }

  // Returns a bound on sup over (cell ∩ rB) of the distance to the net, or a
  // negative value if the cell misses rB.
  double cell(const Vector& lo, double size, int depth) const {
    const std::size_t n = lo.size();
    const auto corners = corners_of(lo, size);
    Vector center = lo;
    for (std::size_t i = 0; i < n; ++i) center[i] += 0.5 * size;
    double half_diameter = 0.0;
    for (const auto& c : corners) {
      half_diameter = std::max(half_diameter, space_.distance(c, center));
    }
    const double limit = r_ * (1.0 + kThresholdSlack);
    if (space_.is_absolute()) {
      // A monotone norm is smallest at the cell point closest to the origin
      // coordinatewise.
      Vector q(n);
      for (std::size_t i = 0; i < n; ++i) {
        q[i] = std::clamp(0.0, lo[i], lo[i] + size);
      }
      if (space_.norm(q) > limit) return -1.0;
    } else if (space_.norm(center) - half_diameter > limit) {
      return -1.0;
    }

    double best = std::numeric_limits<double>::infinity();
    double radius = target_ + 2.0 * half_diameter;
    while (true) {
      index_.visit_box(center, space_.box_factor() * radius, [&](std::size_t id) {
        const Vector& p = points_[id];
        if (space_.distance(center, p) >= best) return;
        double worst = 0.0;
        for (const auto& c : corners) {
          worst = std::max(worst, space_.distance(c, p));
          if (worst >= best) return;
        }
        best = worst;
      });
      // Any point outside the searched box is farther than `radius` from the
      // center, hence from some corner.
      if (best <= radius) break;
      radius *= 2.0;
    }
    if (best <= target_ * (1.0 + kThresholdSlack) || depth >= refine_depth_) {
      return best;
    }
    double refined = -1.0;
    const double child = 0.5 * size;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vector child_lo = lo;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) child_lo[i] += child;
      }
      refined = std::max(refined, cell(child_lo, child, depth + 1));
    }
    return refined;
  }

 private:
  const NormedSpace& space_;
  const std::vector<Vector>& points_;
  double r_;
  double target_;
  int refine_depth_;
  GridIndex index_;
};

}  // namespace

double lattice_candidate_count(const NormedSpace& space, double delta, double r,
                               int mesh_divisor) {
  const Lattice lat = make_lattice(space, delta, r, mesh_divisor);
  return std::pow(2.0 * static_cast<double>(lat.extent) + 1.0,
                  static_cast<double>(lat.dimension));
}

double covering_certificate(const NormedSpace& space,
                            const std::vector<Vector>& points, double r,
                            double mesh, double target, int refine_depth) {
  if (points.empty()) throw ValidationError("empty point set", "points");
  const std::size_t n = space.dimension();
  const auto cells = static_cast<std::int64_t>(
      std::ceil(r * space.box_factor() / mesh - 1e-9));
  CoveringBound bound(space, points, r, target, refine_depth,
                      std::max(target, mesh) * space.box_factor());
  double certificate = 0.0;
  std::vector<std::int64_t> m(n, -cells);
  while (true) {
    Vector lo(n);
    for (std::size_t i = 0; i < n; ++i) lo[i] = static_cast<double>(m[i]) * mesh;
    certificate = std::max(certificate, bound.cell(lo, mesh, 0));
    std::size_t axis = n;
    bool done = true;
    while (axis > 0) {
      --axis;
      if (++m[axis] <= cells - 1) {
        done = false;
        break;
      }
      m[axis] = -cells;
    }
    if (done) break;
  }
  return certificate;
}

Net build_net(const NormedSpace& space, double delta, double r,
              int mesh_divisor) {
  NetOptions options;
  options.mesh_divisor = mesh_divisor;
  return build_net(space, delta, r, options);
}

Net build_net(const NormedSpace& space, double delta, double r,
              const NetOptions& options) {
  validate_net_args(delta, r, options.mesh_divisor);
  const double candidates =
      lattice_candidate_count(space, delta, r, options.mesh_divisor);
  if (candidates > static_cast<double>(options.candidate_cap)) {
    throw ValidationError("net too large: " + std::to_string(candidates) +
                              " lattice candidates exceed the cap of " +
                              std::to_string(options.candidate_cap),
                          "r");
  }
  const Lattice lat = make_lattice(space, delta, r, options.mesh_divisor);
  const std::size_t n = space.dimension();
  const double in_ball = r * (1.0 + kThresholdSlack);
  const double separation = delta * (1.0 - kThresholdSlack);

  Net net{space, delta, r, options.mesh_divisor, {}, 0.0, 0.0};
  GridIndex index(n, space.box_factor() * delta);
  auto try_add = [&](const Vector& p) {
    if (space.norm(p) > in_ball) return;
    bool separated = true;
    index.visit_box(p, space.box_factor() * delta, [&](std::size_t id) {
      if (separated && space.distance(p, net.points[id]) < separation) {
        separated = false;
      }
    });
    if (!separated) return;
    index.insert(net.points.size(), p);
    net.points.push_back(p);
  };

  try_add(Vector(n));
  const int k = options.mesh_divisor;
  auto is_coarse = [&](const std::vector<std::int64_t>& m) {
    return std::all_of(m.begin(), m.end(),
                       [&](std::int64_t x) { return x % k == 0; });
  };
  for_each_index(n, lat.extent, [&](const std::vector<std::int64_t>& m) {
    if (is_coarse(m)) try_add(lat.point(m, delta));
  });
  for_each_index(n, lat.extent, [&](const std::vector<std::int64_t>& m) {
    if (!is_coarse(m)) try_add(lat.point(m, delta));
  });

  net.covering_certificate = covering_certificate(
      space, net.points, r, lat.mesh, delta, options.refine_depth);
  net.rho = std::max(delta, net.covering_certificate);
  return net;
}

std::size_t nearest_net_index(const Net& net, const Vector& y) {
  if (net.space.norm(y) > net.r) return 0;
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    const double d = net.space.distance(y, net.points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Vector nearest_net_point(const Net& net, const Vector& y) {
  return net.points.at(nearest_net_index(net, y));
}

NetReport verify_net(const Net& net, std::size_t probe_count, Rng& rng) {
  if (probe_count == 0) throw ValidationError("probe_count must be >= 1", "probes");
  NetReport report;
  report.probes = probe_count;
  report.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    for (std::size_t j = i + 1; j < net.points.size(); ++j) {
      report.min_separation = std::min(
          report.min_separation, net.space.distance(net.points[i], net.points[j]));
    }
  }
  const Vector origin(net.space.dimension());
  for (std::size_t k = 0; k < probe_count; ++k) {
    const Vector y = sample_ball(net.space, origin, net.r, rng);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) gap = std::min(gap, net.space.distance(y, p));
    report.max_probe_gap = std::max(report.max_probe_gap, gap);
  }
  return report;
}

bool is_greedy_maximal(const Net& net) {
  const std::size_t n = net.space.dimension();
  const Lattice lat = make_lattice(net.space, net.delta, net.r, net.mesh_divisor);
  GridIndex index(n, net.space.box_factor() * net.delta);
  for (std::size_t i = 0; i < net.points.size(); ++i) index.insert(i, net.points[i]);
  const double in_ball = net.r * (1.0 + kThresholdSlack);
  const double separation = net.delta * (1.0 - kThresholdSlack);
  bool maximal = true;
  for_each_index(n, lat.extent, [&](const std::vector<std::int64_t>& m) {
    if (!maximal) return;
    const Vector p = lat.point(m, net.delta);
    if (net.space.norm(p) > in_ball) return;
    bool blocked = false;
    index.visit_box(p, net.space.box_factor() * net.delta, [&](std::size_t id) {
      if (!blocked && net.space.distance(p, net.points[id]) < separation) {
        blocked = true;
      }
    });
    if (!blocked) maximal = false;
  });
  return maximal;
}

}  // namespace testspace
