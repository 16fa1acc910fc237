#pragma once

#include <cstddef>
#include <vector>

#include "testspace/normed_space.hpp"
#include "testspace/rng.hpp"
#include "testspace/vector.hpp"

namespace testspace {

// Relative slack used whenever a lattice distance is compared against a
// separation or edge threshold.
inline constexpr double kThresholdSlack = 1e-12;

// A delta-separated subset of rB(X) that is rho-covering: every point of
// rB(X) lies within rho of some net point. points[0] is always the origin.
struct Net {
  NormedSpace space;
  double delta = 0.0;
  double r = 0.0;
  int mesh_divisor = 4;
  std::vector<Vector> points;
  // Certified covering radius actually achieved by `points`.
  double covering_certificate = 0.0;
  // max(delta, covering_certificate): the scale the graph construction uses.
  double rho = 0.0;
};

struct NetOptions {
  int mesh_divisor = 4;
  std::size_t candidate_cap = 1'000'000;
  // Extra halvings of a certificate cell whose bound exceeds delta.
  int refine_depth = 3;
};

// Greedy maximal delta-separated subset of the mesh lattice (delta/k) Z^n
// inside rB(X). Scan order: the origin, then the coarse lattice delta Z^n in
// lexicographic order, then the remaining mesh points in lexicographic order.
// Deterministic.
Net build_net(const NormedSpace& space, double delta, double r,
              const NetOptions& options = {});
Net build_net(const NormedSpace& space, double delta, double r,
              int mesh_divisor);

// Upper bound on sup_{x in rB} min_p |x - p|, by covering the ball with mesh
// cells and bounding each cell by min_p max_{corner} |corner - p| (a convex
// function on a box peaks at a corner). Cells whose bound exceeds `target`
// are split up to `refine_depth` times.
double covering_certificate(const NormedSpace& space,
                            const std::vector<Vector>& points, double r,
                            double mesh, double target, int refine_depth);

// Eq. "best approximation": the origin when |y| > r, else the net point
// nearest to y (lowest index on ties).
std::size_t nearest_net_index(const Net& net, const Vector& y);
Vector nearest_net_point(const Net& net, const Vector& y);

struct NetReport {
  double max_probe_gap = 0.0;
  double min_separation = 0.0;
  std::size_t probes = 0;
};

// Exact minimum pairwise separation plus the largest probe-to-net distance
// over `probe_count` uniform probes of rB(X).
NetReport verify_net(const Net& net, std::size_t probe_count, Rng& rng);

// True if no mesh candidate inside rB(X) could be added without violating
// delta-separation.
bool is_greedy_maximal(const Net& net);

// Number of mesh lattice candidates the construction would scan.
double lattice_candidate_count(const NormedSpace& space, double delta, double r,
                               int mesh_divisor);

}  // namespace testspace
