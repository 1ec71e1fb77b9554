#pragma once

#include "chshmd/constructors.hpp"

#include <cmath>
#include <optional>

namespace chshmd {

/// 2(sqrt 2 - 1): the largest violation quantum mechanics allows.
inline const double kTsirelsonViolation = 2.0 * (std::sqrt(2.0) - 1.0);

struct InfoCurvePoint {
  double V = 0.0;
  double I = 0.0;
  std::optional<double> argmin_M2;
};

/// h(x) = x log2 x, h(0) = 0. Throws on negative x.
double entropy_term(double x);

/// Mutual information in bits between lambda and the joint setting.
template <class T>
double mutual_information(const HiddenVariableModel<T>& model) {
  require_valid(model);
  const auto real = to_real(model);
  const auto pl = marginal_lambda(real);
  double sum = 0.0;
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    const double q = real.settings.q[c];
    const auto& col = real.cond.columns[c];
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] > 0.0 && q > 0.0) sum += q * col[i] * std::log2(col[i] / pl[i]);
    }
  }
  // Rounding can leave a tiny negative residue for independent models.
  return sum < 0.0 ? 0.0 : sum;
}

/// Closed form for the two-parameter model. Requires M1 >= M2 and M1 + 2 M2 <= 2.
double i_g(double m1, double m2);

/// Minimum of i_g along M1 + 2 M2 = V, attained at M1 = M2 = V/3.
InfoCurvePoint i_g_min(double V);

/// Symmetric-model information: (V/2) log2(4/3).
double i_hall(double V);

/// One-sided-model information, computed directly from banik_model(V/2).
double i_banik(double V);

/// 1/4 {6 + h(2 - V) - h(4 - V)}; agrees with i_banik.
double i_banik_closed_form(double V);

/// Closed form for the interpolating model. Requires M1 >= M2 and M1 + 2 M2 <= 2.
double i_interp(double m1, double m2);

/// i_interp along the line M1 = V - 2 M2.
double i_interp_v(double V, double m2);

/// Minimizes the directly computed information of interp_model(V - 2 M2, M2)
/// over M2 in [0, V/3].
InfoCurvePoint i_interp_min(double V);

/// Information of the four-parameter family
/// M1 = M2 = V_T/3 + 2z, Mhat1 = Mhat2 = V_T/3 - z, for z in [0, V_T/3].
double i_four(double z);

/// The ModelParams of the i_four family at z.
ModelParams<double> i_four_params(double z);

}  // namespace chshmd
