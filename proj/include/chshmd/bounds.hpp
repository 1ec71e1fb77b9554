#pragma once

#include "chshmd/measures.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chshmd {

/// Parameter outside its allowed range. Parameters are never clamped.
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter tuple violating the range or triangle constraints.
class InfeasibleParams : public std::invalid_argument {
 public:
  explicit InfeasibleParams(std::vector<std::string> violated);
  const std::vector<std::string>& violated() const { return violated_; }

 private:
  std::vector<std::string> violated_;
};

/// Requested (M1, M2, Mhat1, Mhat2). Absent Mhat values mean Mhat = M.
template <class T>
struct ModelParams {
  T M1{0};
  T M2{0};
  std::optional<T> Mhat1;
  std::optional<T> Mhat2;

  T mhat1() const { return Mhat1 ? *Mhat1 : M1; }
  T mhat2() const { return Mhat2 ? *Mhat2 : M2; }

  ModelParams swapped() const { return {M2, M1, Mhat2, Mhat1}; }
};

template <class T>
ModelParams<T> make_params(T m1, T m2, T mhat1, T mhat2) {
  return {std::move(m1), std::move(m2), std::move(mhat1), std::move(mhat2)};
}

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<std::string> violated;
};

namespace detail {

template <class T>
void require_unit_range(const T& v, const char* name) {
  if (!(v >= T(0) && v <= T(2))) {
    throw ParameterError(std::string(name) + " must lie in [0, 2], got " + format_double(to_double(v)));
  }
}

}  // namespace detail

/// Violation allowed by the two-parameter bound: min{M1 + M2 + min{M1,M2}, 2}.
template <class T>
T v_g(const T& m1, const T& m2) {
  detail::require_unit_range(m1, "M1");
  detail::require_unit_range(m2, "M2");
  return std::min(T(m1 + m2 + std::min(m1, m2)), T(2));
}

template <class T>
T bound_two_param(const T& m1, const T& m2) {
  return T(2) + v_g(m1, m2);
}

template <class T>
T bound_hall(const T& m) {
  detail::require_unit_range(m, "M");
  return T(2) + std::min(T(3 * m), T(2));
}

template <class T>
T bound_banik(const T& m1) {
  detail::require_unit_range(m1, "M1");
  return T(2) + m1;
}

template <class T>
FeasibilityVerdict check_param_feasible(const ModelParams<T>& p) {
  FeasibilityVerdict v;
  auto fail = [&](std::string what) {
    v.feasible = false;
    v.violated.push_back(std::move(what));
  };
  const T h1 = p.mhat1();
  const T h2 = p.mhat2();
  // Floating inputs get the usual 1e-12 slack; rationals are compared exactly.
  const T zero(0), two(2);
  if (!approx_le(zero, p.M1) || !approx_le(p.M1, two)) fail("0 <= M1 <= 2");
  if (!approx_le(zero, p.M2) || !approx_le(p.M2, two)) fail("0 <= M2 <= 2");
  if (!approx_le(zero, h1)) fail("0 <= Mhat1");
  if (!approx_le(zero, h2)) fail("0 <= Mhat2");
  if (!approx_le(h1, p.M1)) fail("Mhat1 <= M1");
  if (!approx_le(h2, p.M2)) fail("Mhat2 <= M2");
  if (!approx_le(T(p.M1 - h1), T(p.M2 + h2))) fail("M1 - Mhat1 <= M2 + Mhat2");
  if (!approx_le(T(p.M2 - h2), T(p.M1 + h1))) fail("M2 - Mhat2 <= M1 + Mhat1");
  return v;
}

template <class T>
void require_feasible(const ModelParams<T>& p) {
  FeasibilityVerdict v = check_param_feasible(p);
  if (!v.feasible) throw InfeasibleParams(std::move(v.violated));
}

/// 2 + min{Mhat1 + Mhat2 + min{M1,M2}, 2}.
template <class T>
T bound_four_param(const ModelParams<T>& p) {
  require_feasible(p);
  return T(2) + std::min(T(p.mhat1() + p.mhat2() + std::min(p.M1, p.M2)), T(2));
}

/// max{M1,M2} <= M <= min{M1+M2, 2}.
template <class T>
bool check_inequality_chain(const DependenceReport<T>& r) {
  return approx_le(std::max(r.M1, r.M2), r.M) && approx_le(r.M, std::min(T(r.M1 + r.M2), T(2)));
}

template <class T>
ModelParams<T> measured_params(const DependenceReport<T>& r) {
  return {r.M1, r.M2, r.Mhat1, r.Mhat2};
}

}  // namespace chshmd
