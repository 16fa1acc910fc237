#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testspace/rng.hpp"
#include "testspace/vector.hpp"

namespace testspace {

enum class NormKind { kLp, kL1Sum, kCustom };

using NormFunction = std::function<double(std::span<const double>)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Parameter tolerance for the ternary searches below.
inline constexpr double kDefaultSearchTol = 1e-9;

// A finite-dimensional normed space. Values are immutable and cheap to copy
// (shared representation), so they can be passed freely between threads.
//
// box_factor c certifies that the unit ball lies in the sup-norm ball of
// radius c, i.e. |x|_inf <= c * |x| for every x. Rejection sampling and all
// sup-norm prefilters depend on it.
class NormedSpace {
 public:
  // l_p^dim, p in [1, inf]. Pass kInfinity for the max norm.
  static NormedSpace lp(double p, std::size_t dimension);
  // Custom evaluator. The caller certifies box_factor; `absolute` declares the
  // norm monotone in coordinate moduli (|x_i| <= |y_i| for all i implies
  // |x| <= |y|), which enables tighter certificates in the net builder.
  static NormedSpace custom(std::string name, std::size_t dimension,
                            NormFunction norm, double box_factor,
                            bool absolute = false);

  std::size_t dimension() const noexcept;
  NormKind kind() const noexcept;
  double box_factor() const noexcept;
  bool is_absolute() const noexcept;
  // c > 0 with |x| >= c * |x|_2 for every x; feeds Euclidean lower bounds.
  double euclidean_factor() const noexcept;
  // l_p exponent; only meaningful for kLp.
  double p() const noexcept;
  // Summands; only meaningful for kL1Sum.
  const NormedSpace& first() const;
  const NormedSpace& second() const;
  // Custom norm name; empty for built-ins.
  const std::string& name() const noexcept;

  double norm(std::span<const double> v) const;
  // |a - b| without temporaries.
  double distance(std::span<const double> a, std::span<const double> b) const;
  // |base + t * dir|; the hot path of every segment predicate.
  double norm_affine(std::span<const double> base, std::span<const double> dir,
                     double t) const;

  // Compact descriptor in the CLI grammar, e.g. "lp:2:3" or
  // "l1sum:lp:2:2+lp:1:1". Custom spaces render as "custom:<name>:<dim>".
  std::string descriptor() const;

  friend NormedSpace direct_sum_l1(const NormedSpace& a, const NormedSpace& b);

 private:
  struct Impl;
  explicit NormedSpace(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  void check_dimension(std::size_t n) const;

  std::shared_ptr<const Impl> impl_;
};

// X (+)_1 Y with |(x, y)| = |x|_X + |y|_Y.
NormedSpace direct_sum_l1(const NormedSpace& a, const NormedSpace& b);

// Parses `lp:<p|inf>:<dim>` and `l1sum:<desc>+<desc>`; summands may be
// parenthesized to nest on the right.
NormedSpace parse_space_descriptor(std::string_view text);

// Registry used to rebuild custom spaces from serialized descriptors.
void register_custom_norm(const NormedSpace& space);
std::optional<NormedSpace> find_custom_norm(const std::string& name,
                                            std::size_t dimension);

struct Segment {
  Vector a;
  Vector b;

  Vector at(double t) const { return lerp(a, b, t); }
  bool degenerate() const { return a == b; }
};

// Uniform (volume) sample from {x : |x - center| <= radius} by rejection from
// the enclosing box of half-width radius * box_factor.
Vector sample_ball(const NormedSpace& space, const Vector& center,
                   double radius, Rng& rng,
                   std::size_t max_attempts = 1'000'000);

// min_t |a + t(b - a) - p| over [0, 1]. The returned value is attained at a
// concrete parameter and exceeds the true minimum by at most tol * |b - a|.
double point_segment_distance(const NormedSpace& space, const Vector& p,
                              const Segment& s, double tol = kDefaultSearchTol);

// min over (s, t) in [0,1]^2 of |s1(s) - s2(t)|. Overshoot is bounded by
// tol * (|s1| + |s2|).
double segment_segment_distance(const NormedSpace& space, const Segment& s1,
                                const Segment& s2,
                                double tol = kDefaultSearchTol);

// Parameters t in [0, 1] with |s(t) - center| = radius, ascending. At most two
// roots unless the segment runs along the sphere, in which case the ends of
// the contact interval are returned.
std::vector<double> sphere_segment_intersections(
    const NormedSpace& space, const Vector& center, double radius,
    const Segment& s, double tol = kDefaultSearchTol);

// Lower bound on the norm distance between the coordinate bounding boxes of
// two segments (sup-norm gap divided by box_factor).
double bounding_box_gap(const NormedSpace& space, const Segment& s1,
                        const Segment& s2);

// Certified lower bounds on Euclidean distances (closed form, with a rounding
// allowance).
double euclidean_point_segment_lower_bound(const Vector& p, const Segment& s);
double euclidean_segment_lower_bound(const Segment& s1, const Segment& s2);

// Slack added to a clearance threshold so that search error cannot turn a
// violation into a pass: tol * (|s1| + |s2| + 1).
double clearance_margin(const NormedSpace& space, const Segment& s1,
                        const Segment& s2, double tol);

// True iff the distance is certified >= threshold + margin. Cheap bounds are
// tried first; the ternary search runs only when they are inconclusive.
bool point_segment_clear(const NormedSpace& space, const Vector& p,
                         const Segment& s, double threshold,
                         double tol = kDefaultSearchTol);
bool segments_clear(const NormedSpace& space, const Segment& s1,
                    const Segment& s2, double threshold,
                    double tol = kDefaultSearchTol);

struct NormAxiomViolation {
  std::string axiom;
  Vector x;
  Vector y;
};

// Spot-checks positivity, homogeneity and the triangle inequality on random
// pairs drawn from the box [-scale, scale]^n.
std::optional<NormAxiomViolation> spot_check_norm(const NormedSpace& space,
                                                  std::size_t trials, Rng& rng,
                                                  double scale = 1.0,
                                                  double tol = 1e-12);

}  // namespace testspace
