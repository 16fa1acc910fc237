#include "testspace/normed_space.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "testspace/detail/convex_search.hpp"
#include "testspace/error.hpp"

namespace testspace {

struct NormedSpace::Impl {
  NormKind kind = NormKind::kLp;
  std::size_t dimension = 0;
  double p = 2.0;
  std::optional<NormedSpace> first;
  std::optional<NormedSpace> second;
  std::string name;
  NormFunction custom;
  double box_factor = 1.0;
  bool absolute = true;
  double euclidean_factor = 1.0;
};

namespace {

// Accumulates |x_i|^p style sums for the l_p family. Generic p scales by the
// largest modulus to keep pow() in range.
template <class Coord>
double lp_norm(double p, std::size_t n, Coord&& coord) {
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(coord(i));
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = coord(i);
      s += x * x;
    }
    return std::sqrt(s);
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(coord(i)));
    return m;
  }
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(coord(i)));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(coord(i)) / m, p);
  return m * std::pow(s, 1.0 / p);
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

NormedSpace NormedSpace::lp(double p, std::size_t dimension) {
  if (dimension == 0) throw ValidationError("dimension must be positive", "dim");
  if (!(p >= 1.0)) throw ValidationError("l_p requires p in [1, inf]", "p");
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::kLp;
  impl->dimension = dimension;
  impl->p = p;
  impl->box_factor = 1.0;
  impl->absolute = true;
  // |x|_p >= |x|_2 for p <= 2, and |x|_p >= n^(1/p - 1/2) |x|_2 above.
  impl->euclidean_factor =
      p <= 2.0 ? 1.0
               : std::pow(static_cast<double>(dimension),
                          (std::isinf(p) ? 0.0 : 1.0 / p) - 0.5);
  return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::custom(std::string name, std::size_t dimension,
                                NormFunction norm, double box_factor,
                                bool absolute) {
  if (dimension == 0) throw ValidationError("dimension must be positive", "dim");
  if (!norm) throw ValidationError("custom norm needs an evaluator", "norm");
  if (!(box_factor > 0.0) || !std::isfinite(box_factor)) {
    throw ValidationError("custom norm needs a positive finite box_factor",
                          "box_factor");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::kCustom;
  impl->dimension = dimension;
  impl->name = std::move(name);
  impl->custom = std::move(norm);
  impl->box_factor = box_factor;
  impl->absolute = absolute;
  impl->euclidean_factor =
      1.0 / (box_factor * std::sqrt(static_cast<double>(dimension)));
  return NormedSpace(std::move(impl));
}

NormedSpace direct_sum_l1(const NormedSpace& a, const NormedSpace& b) {
  auto impl = std::make_shared<NormedSpace::Impl>();
  impl->kind = NormKind::kL1Sum;
  impl->dimension = a.dimension() + b.dimension();
  impl->first = a;
  impl->second = b;
  impl->box_factor = std::max(a.box_factor(), b.box_factor());
  impl->absolute = a.is_absolute() && b.is_absolute();
  impl->euclidean_factor =
      std::min(a.euclidean_factor(), b.euclidean_factor());
  return NormedSpace(std::move(impl));
}

std::size_t NormedSpace::dimension() const noexcept { return impl_->dimension; }
NormKind NormedSpace::kind() const noexcept { return impl_->kind; }
double NormedSpace::box_factor() const noexcept { return impl_->box_factor; }
bool NormedSpace::is_absolute() const noexcept { return impl_->absolute; }
double NormedSpace::euclidean_factor() const noexcept {
  return impl_->euclidean_factor;
}
double NormedSpace::p() const noexcept { return impl_->p; }
const std::string& NormedSpace::name() const noexcept { return impl_->name; }

const NormedSpace& NormedSpace::first() const {
  if (!impl_->first) throw ValidationError("not a direct sum");
  return *impl_->first;
}

const NormedSpace& NormedSpace::second() const {
  if (!impl_->second) throw ValidationError("not a direct sum");
  return *impl_->second;
}

void NormedSpace::check_dimension(std::size_t n) const {
  if (n != impl_->dimension) {
    throw ValidationError("dimension mismatch: space has dimension " +
                              std::to_string(impl_->dimension) +
                              ", vector has " + std::to_string(n),
                          "dim");
  }
}

double NormedSpace::norm(std::span<const double> v) const {
  check_dimension(v.size());
  switch (impl_->kind) {
    case NormKind::kLp:
      return lp_norm(impl_->p, v.size(), [&](std::size_t i) { return v[i]; });
    case NormKind::kL1Sum: {
      const std::size_t n1 = impl_->first->dimension();
      return impl_->first->norm(v.first(n1)) +
             impl_->second->norm(v.subspan(n1));
    }
    case NormKind::kCustom:
      return impl_->custom(v);
  }
  return 0.0;
}

double NormedSpace::distance(std::span<const double> a,
                             std::span<const double> b) const {
  check_dimension(a.size());
  check_dimension(b.size());
  switch (impl_->kind) {
    case NormKind::kLp:
      return lp_norm(impl_->p, a.size(),
                     [&](std::size_t i) { return a[i] - b[i]; });
    case NormKind::kL1Sum: {
      const std::size_t n1 = impl_->first->dimension();
      return impl_->first->distance(a.first(n1), b.first(n1)) +
             impl_->second->distance(a.subspan(n1), b.subspan(n1));
    }
    case NormKind::kCustom: {
      std::vector<double> d(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
      return impl_->custom(d);
    }
  }
  return 0.0;
}

double NormedSpace::norm_affine(std::span<const double> base,
                                std::span<const double> dir, double t) const {
  switch (impl_->kind) {
    case NormKind::kLp:
      return lp_norm(impl_->p, base.size(),
                     [&](std::size_t i) { return base[i] + t * dir[i]; });
    case NormKind::kL1Sum: {
      const std::size_t n1 = impl_->first->dimension();
      return impl_->first->norm_affine(base.first(n1), dir.first(n1), t) +
             impl_->second->norm_affine(base.subspan(n1), dir.subspan(n1), t);
    }
    case NormKind::kCustom: {
      std::vector<double> d(base.size());
      for (std::size_t i = 0; i < base.size(); ++i) d[i] = base[i] + t * dir[i];
      return impl_->custom(d);
    }
  }
  return 0.0;
}

std::string NormedSpace::descriptor() const {
  switch (impl_->kind) {
    case NormKind::kLp:
      return "lp:" + format_p(impl_->p) + ":" + std::to_string(impl_->dimension);
    case NormKind::kL1Sum: {
      std::string rhs = impl_->second->descriptor();
      if (impl_->second->kind() == NormKind::kL1Sum) rhs = "(" + rhs + ")";
      return "l1sum:" + impl_->first->descriptor() + "+" + rhs;
    }
    case NormKind::kCustom:
      return "custom:" + impl_->name + ":" + std::to_string(impl_->dimension);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Descriptor parsing

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  NormedSpace parse_all() {
    NormedSpace space = parse_desc();
    if (pos_ != text_.size()) fail("trailing characters");
    return space;
  }

 private:
  NormedSpace parse_desc() {
    if (consume("lp:")) {
      const std::string_view p_tok = take_until(':');
      if (!consume(":")) fail("expected ':' after p");
      const std::size_t dim = parse_uint();
      double p = 0.0;
      if (p_tok == "inf" || p_tok == "infinity") {
        p = kInfinity;
      } else {
        p = parse_double(p_tok);
      }
      return NormedSpace::lp(p, dim);
    }
    if (consume("l1sum:")) {
      NormedSpace a = parse_term();
      if (!consume("+")) fail("expected '+' between summands");
      NormedSpace b = parse_term();
      return direct_sum_l1(a, b);
    }
    if (consume("custom:")) {
      const std::string name(take_until(':'));
      if (!consume(":")) fail("expected ':' after custom name");
      const std::size_t dim = parse_uint();
      if (auto found = find_custom_norm(name, dim)) return *found;
      fail("unknown custom norm '" + name + "'");
    }
    fail("expected 'lp:', 'l1sum:' or 'custom:'");
  }

  NormedSpace parse_term() {
    if (consume("(")) {
      NormedSpace inner = parse_desc();
      if (!consume(")")) fail("expected ')'");
      return inner;
    }
    return parse_desc();
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string_view take_until(char stop) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != stop) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::size_t parse_uint() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected dimension");
    std::size_t value = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, value);
    return value;
  }

  double parse_double(std::string_view tok) {
    try {
      std::size_t used = 0;
      const std::string s(tok);
      const double v = std::stod(s, &used);
      if (used != s.size()) fail("bad exponent '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad exponent '" + std::string(tok) + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("space descriptor '" + std::string(text_) +
                              "': " + what + " at offset " +
                              std::to_string(pos_),
                          "space");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::string, std::size_t>, NormedSpace>& registry() {
  static std::map<std::pair<std::string, std::size_t>, NormedSpace> r;
  return r;
}

}  // namespace

NormedSpace parse_space_descriptor(std::string_view text) {
  return DescriptorParser(text).parse_all();
}

void register_custom_norm(const NormedSpace& space) {
  if (space.kind() != NormKind::kCustom) {
    throw ValidationError("only custom norms can be registered");
  }
  std::lock_guard lock(registry_mutex());
  registry().insert_or_assign({space.name(), space.dimension()}, space);
}

std::optional<NormedSpace> find_custom_norm(const std::string& name,
                                            std::size_t dimension) {
  std::lock_guard lock(registry_mutex());
  auto it = registry().find({name, dimension});
  if (it == registry().end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Geometry

Vector sample_ball(const NormedSpace& space, const Vector& center,
                   double radius, Rng& rng, std::size_t max_attempts) {
  if (!(radius > 0.0)) throw ValidationError("radius must be positive", "radius");
  if (center.size() != space.dimension()) {
    throw ValidationError("center dimension mismatch", "center");
  }
  const double half = radius * space.box_factor();
  Vector x(center.size());
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = center[i] + rng.uniform(-half, half);
    }
    if (space.distance(x, center) <= radius) return x;
  }
  throw ConstructionError("sample_ball: rejection budget of " +
                          std::to_string(max_attempts) +
                          " draws exceeded (box_factor too loose?)");
}

// Each predicate below minimizes t -> |base + t*dir| or a partial minimum of a
// jointly convex function. Norms are convex and the maps are affine, so the
// objectives are convex and ternary search is exact up to its bracket width.

double point_segment_distance(const NormedSpace& space, const Vector& p,
                              const Segment& s, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive", "tol");
  const Vector base = s.a - p;
  const Vector dir = s.b - s.a;
  auto f = [&](double t) { return space.norm_affine(base, dir, t); };
  return detail::minimize_convex(f, 0.0, 1.0, tol).value;
}

double segment_segment_distance(const NormedSpace& space, const Segment& s1,
                                const Segment& s2, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive", "tol");
  // g(s, t) = |(a1 - a2) + s d1 - t d2| is jointly convex, so its partial
  // minimum over t is convex in s.
  const Vector base0 = s1.a - s2.a;
  const Vector d1 = s1.b - s1.a;
  Vector neg_d2 = s2.a - s2.b;
  Vector base(base0.size());
  auto inner = [&](double s) {
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = base0[i] + s * d1[i];
    auto g = [&](double t) { return space.norm_affine(base, neg_d2, t); };
    return detail::minimize_convex(g, 0.0, 1.0, tol).value;
  };
  return detail::minimize_convex(inner, 0.0, 1.0, tol).value;
}

std::vector<double> sphere_segment_intersections(const NormedSpace& space,
                                                 const Vector& center,
                                                 double radius,
                                                 const Segment& s,
                                                 double tol) {
  if (!(radius > 0.0)) throw ValidationError("radius must be positive", "radius");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive", "tol");
  const Vector base = s.a - center;
  const Vector dir = s.b - s.a;
  auto f = [&](double t) { return space.norm_affine(base, dir, t); };
  const auto m = detail::minimize_convex(f, 0.0, 1.0, tol);
  std::vector<double> roots;
  if (m.value > radius + tol) return roots;

  // f is non-increasing on [0, arg] and non-decreasing on [arg, 1]. Bisect for
  // the boundary of {t : f(t) <= radius} on each side.
  const double eps = tol * 1e-3;
  auto bisect = [&](double outside, double inside) {
    while (std::abs(outside - inside) > eps) {
      const double mid = 0.5 * (outside + inside);
      if (f(mid) > radius) {
        outside = mid;
      } else {
        inside = mid;
      }
    }
    return 0.5 * (outside + inside);
  };
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  if (std::abs(f0 - radius) <= tol) {
    roots.push_back(0.0);
  } else if (f0 > radius) {
    roots.push_back(bisect(0.0, m.arg));
  }
  if (std::abs(f1 - radius) <= tol) {
    roots.push_back(1.0);
  } else if (f1 > radius) {
    roots.push_back(bisect(1.0, m.arg));
  }
  if (roots.empty() && std::abs(m.value - radius) <= tol) {
    roots.push_back(m.arg);  // tangency
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double x, double y) { return y - x <= tol; }),
              roots.end());
  return roots;
}

double bounding_box_gap(const NormedSpace& space, const Segment& s1,
                        const Segment& s2) {
  double gap = 0.0;
  for (std::size_t i = 0; i < s1.a.size(); ++i) {
    const double lo1 = std::min(s1.a[i], s1.b[i]);
    const double hi1 = std::max(s1.a[i], s1.b[i]);
    const double lo2 = std::min(s2.a[i], s2.b[i]);
    const double hi2 = std::max(s2.a[i], s2.b[i]);
    gap = std::max({gap, lo2 - hi1, lo1 - hi2});
  }
  return gap / space.box_factor();
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Rounding allowance for the Euclidean lower bounds below.
double shave(double d, double scale) {
  return std::max(0.0, d * (1.0 - 1e-12) - 1e-14 * scale);
}

}  // namespace

double euclidean_point_segment_lower_bound(const Vector& p, const Segment& s) {
  const Vector d = s.b - s.a;
  const Vector r = s.a - p;
  const double dd = dot(d, d);
  const double t = dd > 0.0 ? std::clamp(-dot(r, d) / dd, 0.0, 1.0) : 0.0;
  const Vector x = r + t * d;
  const double scale = std::sqrt(dot(r, r)) + std::sqrt(dd);
  return shave(std::sqrt(dot(x, x)), scale);
}

double euclidean_segment_lower_bound(const Segment& s1, const Segment& s2) {
  const Vector d1 = s1.b - s1.a;
  const Vector d2 = s2.b - s2.a;
  const Vector r = s1.a - s2.a;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double b = dot(d1, d2);
  const double c = dot(d1, r);
  const double f = dot(d2, r);
  // Candidate minimizer of g(s, t) = |r + s d1 - t d2|^2 / 2 by clamped
  // projection.
  double s = 0.0;
  double t = 0.0;
  if (a > 0.0 && e > 0.0) {
    const double denom = a * e - b * b;
    s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
    t = (b * s + f) / e;
    if (t < 0.0) {
      t = 0.0;
      s = std::clamp(-c / a, 0.0, 1.0);
    } else if (t > 1.0) {
      t = 1.0;
      s = std::clamp((b - c) / a, 0.0, 1.0);
    }
  } else if (a > 0.0) {
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (e > 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  }
  // g is convex, so g(s', t') >= g + grad . ((s', t') - (s, t)); minimizing
  // the right side over the unit square certifies a lower bound even when the
  // candidate is off (near-parallel segments).
  const Vector x = r + s * d1 - t * d2;
  const double g = 0.5 * dot(x, x);
  const double gs = dot(x, d1);
  const double gt = -dot(x, d2);
  const double lower = g + std::min(-gs * s, gs * (1.0 - s)) +
                       std::min(-gt * t, gt * (1.0 - t));
  const double scale = std::sqrt(dot(r, r)) + std::sqrt(a) + std::sqrt(e);
  return shave(std::sqrt(std::max(0.0, 2.0 * lower)), scale);
}

double clearance_margin(const NormedSpace& space, const Segment& s1,
                        const Segment& s2, double tol) {
  return tol * (space.distance(s1.a, s1.b) + space.distance(s2.a, s2.b) + 1.0);
}

bool point_segment_clear(const NormedSpace& space, const Vector& p,
                         const Segment& s, double threshold, double tol) {
  const double need = threshold + tol * (space.distance(s.a, s.b) + 1.0);
  if (space.euclidean_factor() * euclidean_point_segment_lower_bound(p, s) >= need) {
    return true;
  }
  return point_segment_distance(space, p, s, tol) >= need;
}

bool segments_clear(const NormedSpace& space, const Segment& s1,
                    const Segment& s2, double threshold, double tol) {
  const double need = threshold + clearance_margin(space, s1, s2, tol);
  if (bounding_box_gap(space, s1, s2) >= need) return true;
  if (space.euclidean_factor() * euclidean_segment_lower_bound(s1, s2) >= need) {
    return true;
  }
  return segment_segment_distance(space, s1, s2, tol) >= need;
}

std::optional<NormAxiomViolation> spot_check_norm(const NormedSpace& space,
                                                  std::size_t trials, Rng& rng,
                                                  double scale, double tol) {
  const std::size_t n = space.dimension();
  auto draw = [&] {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-scale, scale);
    return v;
  };
  if (space.norm(Vector(n)) != 0.0) {
    return NormAxiomViolation{"norm(0) = 0", Vector(n), Vector(n)};
  }
  for (std::size_t k = 0; k < trials; ++k) {
    const Vector x = draw();
    const Vector y = draw();
    const double nx = space.norm(x);
    const double ny = space.norm(y);
    const double scale_ref = std::max({nx, ny, 1.0});
    if (!(nx > 0.0) && x != Vector(n)) return NormAxiomViolation{"positivity", x, y};
    const double lambda = rng.uniform(-3.0, 3.0);
    if (std::abs(space.norm(lambda * x) - std::abs(lambda) * nx) >
        tol * 3.0 * scale_ref) {
      return NormAxiomViolation{"homogeneity", x, y};
    }
    if (space.norm(x + y) > nx + ny + tol * scale_ref) {
      return NormAxiomViolation{"triangle inequality", x, y};
    }
  }
  return std::nullopt;
}

}  // namespace testspace
