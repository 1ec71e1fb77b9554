#pragma once

#include "chshmd/bounds.hpp"
#include "chshmd/model.hpp"

#include <string>

namespace chshmd {

/// The free outcome constants c, d, e, f, g of the outcome tables.
struct OutcomeSigns {
  int c = 1, d = 1, e = 1, f = 1, g = 1;
};

/// Outcome table shared by the four- and five-valued saturating models.
/// Rows (A(x), A(x'), B(y), B(y')):
///   l1: ( c,  c,  c,  c)   l2: ( d, -d,  d,  d)   l3: ( e,  e,  e, -e)
///   l4: ( f, -f, -f,  f)   l5: ( g,  g,  g,  g)   (five-valued model only)
OutcomeTable saturating_outcomes(std::size_t lambda_count, const OutcomeSigns& signs = {});

template <class T>
std::string param_text(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return detail::format_double(v);
  }
}

// ---------------------------------------------------------------------------
// Two-parameter model
// ---------------------------------------------------------------------------

template <class T>
struct TwoParamCoefficients {
  T p1, p2, p3;
};

/// Coefficients for M1 >= M2: p1 = M1/2, p2 = M2/2, p3 = max(0, (M1+2M2-2)/4).
template <class T>
TwoParamCoefficients<T> two_param_coefficients(const T& m1, const T& m2) {
  TwoParamCoefficients<T> k{m1 / T(2), m2 / T(2), T(0)};
  T excess = m1 + T(2) * m2 - T(2);
  if (excess > T(0)) k.p3 = excess / T(4);
  return k;
}

template <class T>
HiddenVariableModel<T> two_param_model(const T& m1, const T& m2, const OutcomeSigns& signs = {}) {
  detail::require_unit_range(m1, "M1");
  detail::require_unit_range(m2, "M2");
  const std::string label = "two-param M1=" + param_text(m1) + " M2=" + param_text(m2);
  if (m2 > m1) {
    auto model = swap_parties(two_param_model(m2, m1, signs));
    model.label = label;
    return model;
  }
  const auto k = two_param_coefficients(m1, m2);
  const T four(4);
  const T hi_plus = (T(1) + k.p1 + T(2) * k.p3) / four;
  const T hi_minus = (T(1) + k.p1 - T(2) * k.p3) / four;
  const T lo_plus = (T(1) - k.p1 + T(2) * (k.p2 - k.p3)) / four;
  const T lo_minus = (T(1) - k.p1 - T(2) * (k.p2 - k.p3)) / four;

  HiddenVariableModel<T> model;
  model.outcomes = saturating_outcomes(4, signs);
  model.label = label;
  // Rows l1..l4, columns (x,y), (x,y'), (x',y), (x',y').
  const std::array<std::array<T, 4>, 4> rows = {{
      {hi_plus, hi_minus, lo_plus, lo_minus},
      {hi_minus, hi_plus, lo_minus, lo_plus},
      {lo_plus, lo_minus, hi_plus, hi_minus},
      {lo_minus, lo_plus, hi_minus, hi_plus},
  }};
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    model.cond.columns[c].resize(4);
    for (std::size_t i = 0; i < 4; ++i) model.cond.columns[c][i] = rows[i][c];
  }
  return model;
}

// ---------------------------------------------------------------------------
// Four-parameter model
// ---------------------------------------------------------------------------

template <class T>
struct FourParamCoefficients {
  T q1, q2, q3, q4;
  T R, Rbar;
};

/// Coefficients for M1 >= M2. q3 and q4 vanish while M2 + Mhat1 + Mhat2 <= 2.
template <class T>
FourParamCoefficients<T> four_param_coefficients(const ModelParams<T>& p) {
  const T m1 = p.M1, m2 = p.M2, h1 = p.mhat1(), h2 = p.mhat2();
  FourParamCoefficients<T> k;
  k.q1 = (T(2) - m2 - h1 - h2) / T(8);
  k.q2 = std::min(T(m1 - h1), m2);
  k.R = m2 + h1 + h2 - T(2);
  k.Rbar = m1 + m2 + h2 - T(2);
  k.q3 = T(0);
  k.q4 = T(0);
  if (k.R > T(0)) {
    k.q3 = k.R / T(8);
    k.q4 = (-T(2) - h1 - h2 + std::min(T(m1 + h2), T(2)) + std::max(T(m2 + h1), T(2)) - k.q2) / T(4);
  }
  return k;
}

/// The same q4 written through R and Rbar; equal to four_param_coefficients().q4.
template <class T>
T four_param_q4_from_r(const ModelParams<T>& p) {
  const auto k = four_param_coefficients(p);
  if (!(k.R > T(0))) return T(0);
  const T m2 = p.M2, h2 = p.mhat2();
  return (std::max(T(k.Rbar - k.R), m2) + std::max(k.R, h2) - std::max(k.Rbar, m2) - h2) / T(4);
}

template <class T>
HiddenVariableModel<T> four_param_model(const ModelParams<T>& p, const OutcomeSigns& signs = {}) {
  require_feasible(p);
  const std::string label = "four-param M1=" + param_text(p.M1) + " M2=" + param_text(p.M2) +
                            " Mhat1=" + param_text(p.mhat1()) + " Mhat2=" + param_text(p.mhat2());
  if (p.M2 > p.M1) {
    auto model = swap_parties(four_param_model(p.swapped(), signs));
    model.label = label;
    return model;
  }
  const T m1 = p.M1, m2 = p.M2, h1 = p.mhat1(), h2 = p.mhat2();
  const auto k = four_param_coefficients(p);
  const T& q1 = k.q1;
  const T& q2 = k.q2;
  const T two(2), four(4);

  // Base table, valid on its own while M2 + Mhat1 + Mhat2 <= 2.
  std::array<std::array<T, 4>, 4> rows = {{
      {q1 + (m2 + h1 + q2) / four, q1 + (m2 + h1 - q2) / four, q1 + (-m1 + h1 + h2 + q2) / two, q1},
      {q1 + (-m2 + h1 + two * h2 + q2) / four, q1 + (-m2 + h1 + two * h2 + q2) / four, q1, q1 + h2 / two},
      {q1 + (m2 - q2) / two, q1, q1 + (two * m1 + m2 - h1 - T(3) * q2) / four, q1 + (m2 + h1 - q2) / four},
      {q1, q1 + m2 / two, q1 + (m2 + h1 + q2) / four, q1 + (m2 + h1 + q2) / four},
  }};

  // Corrections beyond M2 + Mhat1 + Mhat2 = 2.
  const T& q3 = k.q3;
  const T& q4 = k.q4;
  const std::array<std::array<T, 4>, 4> extra = {{
      {q3, -q3 - q4, -q3 + q4, q3},
      {-q3 + q4, q3 + two * q4, q3, -q3 + q4},
      {-q3 - q4, q3, q3 - two * q4, -q3 - q4},
      {q3, -q3 - q4, -q3 + q4, q3},
  }};

  HiddenVariableModel<T> model;
  model.outcomes = saturating_outcomes(4, signs);
  model.label = label;
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    model.cond.columns[c].resize(4);
    for (std::size_t i = 0; i < 4; ++i) model.cond.columns[c][i] = rows[i][c] + extra[i][c];
  }
  return model;
}

// ---------------------------------------------------------------------------
// Interpolating model (five hidden values)
// ---------------------------------------------------------------------------

/// Sub-region of the M1 >= M2 half of the freedom square.
///   yellow: M1 + 2 M2 <= 2
///   red:    M1 + 2 M2 >= 2, M2 <= 2/3
///   blue:   M2 >= 2/3
/// Shared boundaries go to the first matching region in that order.
enum class InterpRegion { yellow, red, blue };

template <class T>
InterpRegion interp_region(const T& m1, const T& m2) {
  if (m1 + T(2) * m2 <= T(2)) return InterpRegion::yellow;
  if (m2 <= frac<T>(2, 3)) return InterpRegion::red;
  return InterpRegion::blue;
}

const char* region_name(InterpRegion r);

template <class T>
struct InterpCoefficients {
  InterpRegion region;
  T p1, p2, p3;
};

/// Coefficients of the table belonging to `region`, evaluated at (M1, M2).
template <class T>
InterpCoefficients<T> interp_coefficients_for(InterpRegion region, const T& m1, const T& m2) {
  if (region != InterpRegion::blue) return {region, m1 / T(2), m2 / T(2), T(0)};
  T p1 = (T(2) - m2) / T(4) + (m1 - m2) / T(12);
  T p2 = (m1 - m2) / T(6);
  T p3(0);
  if (m1 > T(4) * m2 - T(2)) p3 = (m1 - T(4) * m2 + T(2)) / T(8);
  return {region, p1, p2, p3};
}

template <class T>
InterpCoefficients<T> interp_coefficients(const T& m1, const T& m2) {
  return interp_coefficients_for(interp_region(m1, m2), m1, m2);
}

namespace detail {

template <class T>
std::array<std::array<T, 4>, 5> interp_rows(const InterpCoefficients<T>& k) {
  const T& p1 = k.p1;
  const T& p2 = k.p2;
  const T& p3 = k.p3;
  const T zero(0), one(1), two(2);
  switch (k.region) {
    case InterpRegion::yellow:
      return {{
          {p2, p2, p2, zero},
          {p2, p2, zero, p2},
          {p2, zero, p1, p1},
          {zero, p2, p2, p2},
          {one - T(3) * p2, one - T(3) * p2, one - p1 - two * p2, one - p1 - two * p2},
      }};
    case InterpRegion::red: {
      const T half = (one - p1) / two;
      return {{
          {p2, p2, half, zero},
          {p2, p2, zero, half},
          {p2, zero, half, half},
          {zero, p2, p1, p1},
          {one - T(3) * p2, one - T(3) * p2, zero, zero},
      }};
    }
    case InterpRegion::blue: {
      const T half = (one - p1) / two;
      return {{
          {p1 - two * p2, half - two * p2 + p3, half + p2 - p3, zero},
          {half + T(4) * p2 - p3, p1 + p2, zero, half + p2 - p3},
          {half - two * p2 + p3, zero, p1 - two * p2 + two * p3, half - two * p2 + T(3) * p3},
          {zero, half + p2 - p3, half + p2 - p3, p1 + p2 - two * p3},
          {zero, zero, zero, zero},
      }};
    }
  }
  throw std::logic_error("unknown interpolation region");
}

template <class T>
HiddenVariableModel<T> rows_to_model(const std::array<std::array<T, 4>, 5>& rows, const OutcomeSigns& signs) {
  HiddenVariableModel<T> model;
  model.outcomes = saturating_outcomes(5, signs);
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    model.cond.columns[c].resize(5);
    for (std::size_t i = 0; i < 5; ++i) model.cond.columns[c][i] = rows[i][c];
  }
  return model;
}

}  // namespace detail

/// Table for a fixed region, without the region dispatch. Used to compare
/// neighbouring tables along shared region boundaries.
template <class T>
HiddenVariableModel<T> interp_table(InterpRegion region, const T& m1, const T& m2, const OutcomeSigns& signs = {}) {
  auto model = detail::rows_to_model(detail::interp_rows(interp_coefficients_for(region, m1, m2)), signs);
  model.label = std::string("interp-") + region_name(region) + " M1=" + param_text(m1) + " M2=" + param_text(m2);
  return model;
}

template <class T>
HiddenVariableModel<T> interp_model(const T& m1, const T& m2, const OutcomeSigns& signs = {}) {
  detail::require_unit_range(m1, "M1");
  detail::require_unit_range(m2, "M2");
  const std::string label = "interp M1=" + param_text(m1) + " M2=" + param_text(m2);
  if (m2 > m1) {
    auto model = swap_parties(interp_model(m2, m1, signs));
    model.label = label;
    return model;
  }
  auto model = detail::rows_to_model(detail::interp_rows(interp_coefficients(m1, m2)), signs);
  model.label = label;
  return model;
}

/// Symmetric special case: interp_model(2p, 2p) with p in [0, 1/3].
template <class T>
HiddenVariableModel<T> hall_model(const T& p, const OutcomeSigns& signs = {}) {
  if (!(p >= T(0) && p <= frac<T>(1, 3))) throw ParameterError("hall_model: p must lie in [0, 1/3]");
  auto model = interp_model(T(2 * p), T(2 * p), signs);
  model.label = "hall p=" + param_text(p);
  return model;
}

/// One-sided special case: interp_model(2p, 0) with p in [0, 1].
template <class T>
HiddenVariableModel<T> banik_model(const T& p, const OutcomeSigns& signs = {}) {
  if (!(p >= T(0) && p <= T(1))) throw ParameterError("banik_model: p must lie in [0, 1]");
  auto model = interp_model(T(2 * p), T(0), signs);
  model.label = "banik p=" + param_text(p);
  return model;
}

}  // namespace chshmd
