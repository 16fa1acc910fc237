#pragma once

#include <cmath>

namespace testspace::detail {

struct ConvexMin {
  double arg = 0.0;
  double value = 0.0;
  // Width of the final bracket known to contain a minimizer.
  double bracket = 0.0;
};

// Golden-section (ternary) search for the minimum of a convex function on
// [lo, hi]. Convexity guarantees that comparing two interior values always
// discards a sub-interval free of minimizers, so the final bracket contains a
// true minimizer and the returned value exceeds the true minimum by at most
// Lipschitz(f) * bracket. Endpoints are evaluated as well.
template <class F>
ConvexMin minimize_convex(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  ConvexMin best{lo, f(lo), hi - lo};
  if (const double fh = f(hi); fh < best.value) best = {hi, fh, hi - lo};
  if (hi - lo <= tol) {
    best.bracket = hi - lo;
    return best;
  }
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 < best.value) best = {x1, f1, 0.0};
  if (f2 < best.value) best = {x2, f2, 0.0};
  best.bracket = b - a;
  return best;
}

}  // namespace testspace::detail
