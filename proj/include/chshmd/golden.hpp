#pragma once

#include <functional>

namespace chshmd {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Minimizes f on [lo, hi]: a uniform scan over `grid_intervals` intervals
/// picks the best node, then golden-section search refines inside the two
/// neighbouring intervals until the bracket is narrower than `tol`.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int grid_intervals = 200, double tol = 1e-10);

}  // namespace chshmd
