#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace testspace {

// A point of a finite-dimensional real space. Thin value wrapper over the
// coordinate array; the norm lives in NormedSpace.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dimension, double fill = 0.0)
      : coords_(dimension, fill) {}
  Vector(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }
  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }

  std::span<const double> span() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  bool all_finite() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](double x) { return std::isfinite(x); });
  }

  Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(double s) {
    for (double& x : coords_) x *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

// (1-t)a + tb
inline Vector lerp(const Vector& a, const Vector& b, double t) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace testspace
