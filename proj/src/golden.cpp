#include "chshmd/golden.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chshmd {

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi, int grid_intervals,
                              double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("minimize_scalar: empty interval");
  if (grid_intervals < 2) throw std::invalid_argument("minimize_scalar: need at least two grid intervals");

  ScalarMinimum best{lo, f(lo), 1};
  if (hi == lo) return best;

  const double step = (hi - lo) / grid_intervals;
  int best_index = 0;
  for (int i = 1; i <= grid_intervals; ++i) {
    double x = (i == grid_intervals) ? hi : lo + i * step;
    double v = f(x);
    ++best.evaluations;
    if (v < best.value) {
      best = {x, v, best.evaluations};
      best_index = i;
    }
  }

  double a = lo + std::max(best_index - 1, 0) * step;
  double b = std::min(lo + (best_index + 1) * step, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.evaluations += 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++best.evaluations;
  }
  double x = 0.5 * (a + b);
  double v = f(x);
  ++best.evaluations;
  // Keep the scan node if the refined point is not better (flat or boundary minima).
  if (v <= best.value) {
    best.x = x;
    best.value = v;
  }
  return best;
}

}  // namespace chshmd
