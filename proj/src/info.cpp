#include "chshmd/info.hpp"

#include "chshmd/golden.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chshmd {

namespace {

constexpr double kSlack = 1e-12;

// Closed forms evaluated on region boundaries can produce arguments like -1e-17.
double h(double x) {
  if (x < 0.0 && x > -kSlack) x = 0.0;
  return entropy_term(x);
}

void require_violation(double V, const char* who) {
  if (!(V >= 0.0 && V <= 2.0)) {
    throw ParameterError(std::string(who) + ": V must lie in [0, 2], got " + detail::format_double(V));
  }
}

void require_lower_region(double m1, double m2, const char* who) {
  detail::require_unit_range(m1, "M1");
  detail::require_unit_range(m2, "M2");
  if (m2 > m1 + kSlack || m1 + 2.0 * m2 > 2.0 + kSlack) {
    throw ParameterError(std::string(who) + ": requires M1 >= M2 and M1 + 2 M2 <= 2");
  }
}

}  // namespace

double entropy_term(double x) {
  if (x < 0.0) throw std::domain_error("entropy_term: negative argument " + detail::format_double(x));
  if (x == 0.0) return 0.0;
  return x * std::log2(x);
}

double i_g(double m1, double m2) {
  require_lower_region(m1, m2, "i_g");
  return 0.25 * (2.0 * h(1.0 + m1 / 2.0) + h(1.0 - m1 / 2.0 + m2) + h(1.0 - m1 / 2.0 - m2));
}

InfoCurvePoint i_g_min(double V) {
  require_violation(V, "i_g_min");
  double I = 0.25 * (3.0 * h(1.0 + V / 6.0) + h(1.0 - V / 2.0));
  return {V, I, V / 3.0};
}

double i_hall(double V) {
  require_violation(V, "i_hall");
  return V / 2.0 * std::log2(4.0 / 3.0);
}

double i_banik(double V) {
  require_violation(V, "i_banik");
  return mutual_information(banik_model(V / 2.0));
}

double i_banik_closed_form(double V) {
  require_violation(V, "i_banik_closed_form");
  return 0.25 * (6.0 + h(2.0 - V) - h(4.0 - V));
}

double i_interp(double m1, double m2) {
  require_lower_region(m1, m2, "i_interp");
  return 0.25 * (2.0 * h((2.0 - 3.0 * m2) / 2.0) + 2.0 * h((2.0 - m1 - 2.0 * m2) / 2.0) -
                 4.0 * h((2.0 * m1 + m2) / 8.0) - 4.0 * h((4.0 - m1 - 5.0 * m2) / 4.0) + 2.0 * h(m1 / 2.0) +
                 h(m2 / 2.0) + 4.5 * m2 * std::log2(4.0 / 3.0));
}

double i_interp_v(double V, double m2) {
  require_violation(V, "i_interp_v");
  return i_interp(V - 2.0 * m2, m2);
}

InfoCurvePoint i_interp_min(double V) {
  require_violation(V, "i_interp_min");
  auto objective = [V](double m2) {
    // Guard against the golden-section probe stepping a hair past V/3.
    m2 = std::clamp(m2, 0.0, V / 3.0);
    // The whole line M1 + 2 M2 = V <= 2 lies in the yellow region; naming it
    // keeps rounding at V = 2 from switching tables mid-search.
    return mutual_information(interp_table(InterpRegion::yellow, V - 2.0 * m2, m2));
  };
  ScalarMinimum best = minimize_scalar(objective, 0.0, V / 3.0, 200, 1e-10);
  return {V, best.value, best.x};
}

ModelParams<double> i_four_params(double z) {
  const double base = kTsirelsonViolation / 3.0;
  if (!(z >= 0.0 && z <= base + kSlack)) {
    throw ParameterError("i_four: z must lie in [0, V_T/3], got " + detail::format_double(z));
  }
  const double hat = std::max(base - z, 0.0);
  return {base + 2.0 * z, base + 2.0 * z, hat, hat};
}

double i_four(double z) {
  i_four_params(z);
  const double s = std::sqrt(2.0);
  return 1.0 + 1.5 * z + h((2.0 - s) / 4.0) + 2.0 * h((2.0 + s - 6.0 * z) / 12.0) + h((2.0 + s + 12.0 * z) / 12.0) -
         2.0 * h((2.0 - 3.0 * z) / 8.0) - 0.25 * h(1.0 + 3.0 * z);
}

}  // namespace chshmd
