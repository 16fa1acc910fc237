#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "testspace/vector.hpp"

namespace testspace {

// Uniform bucket grid over R^n for sup-norm box queries. Norm-ball queries
// go through NormedSpace::box_factor: |x - y| <= R implies
// |x - y|_inf <= box_factor * R.
class GridIndex {
 public:
  GridIndex(std::size_t dimension, double cell_size)
      : dimension_(dimension), cell_size_(cell_size) {}

  void insert(std::size_t id, const Vector& point) {
    buckets_[key_of(point)].push_back(id);
  }

  // Ids of inserted points whose bucket meets the box center +- half_width.
  // Callers filter by exact distance.
  template <class Visit>
  void visit_box(const Vector& center, double half_width, Visit&& visit) const {
    std::vector<std::int64_t> lo(dimension_), hi(dimension_), cur(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) {
      lo[i] = cell_of(center[i] - half_width);
      hi[i] = cell_of(center[i] + half_width);
      cur[i] = lo[i];
    }
    while (true) {
      if (auto it = buckets_.find(cur); it != buckets_.end()) {
        for (std::size_t id : it->second) visit(id);
      }
      std::size_t axis = 0;
      while (axis < dimension_) {
        if (++cur[axis] <= hi[axis]) break;
        cur[axis] = lo[axis];
        ++axis;
      }
      if (axis == dimension_) break;
    }
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept {
      std::size_t h = 0x9e3779b97f4a7c15ULL;
      for (std::int64_t x : k) {
        h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
      }
      return h;
    }
  };

  std::int64_t cell_of(double x) const {
    return static_cast<std::int64_t>(std::floor(x / cell_size_));
  }

  std::vector<std::int64_t> key_of(const Vector& p) const {
    std::vector<std::int64_t> k(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) k[i] = cell_of(p[i]);
    return k;
  }

  std::size_t dimension_;
  double cell_size_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>,
                     KeyHash>
      buckets_;
};

}  // namespace testspace
