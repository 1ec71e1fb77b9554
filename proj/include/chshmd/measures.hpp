#pragma once

#include "chshmd/model.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

namespace chshmd {

/// Sum_i |p_i - q_i|.
template <class T>
T variational_distance(std::span<const T> p, std::span<const T> q) {
  if (p.size() != q.size()) throw std::invalid_argument("variational_distance: length mismatch");
  T d(0);
  for (std::size_t i = 0; i < p.size(); ++i) d += abs_value(T(p[i] - q[i]));
  return d;
}

template <class T>
T variational_distance(const std::vector<T>& p, const std::vector<T>& q) {
  return variational_distance(std::span<const T>(p), std::span<const T>(q));
}

/// Chance of telling p from q given one sample: (1 + D/2) / 2.
double distinguish_probability(double distance);

/// <ab>_{uv} = sum_i p(lambda_i|u,v) A(u,lambda_i) B(v,lambda_i).
template <class T>
T correlation(const HiddenVariableModel<T>& model, JointSetting uv) {
  require_valid(model);
  const auto& col = model.cond.columns[uv.index()];
  T sum(0);
  for (std::size_t i = 0; i < col.size(); ++i) {
    int sign = model.outcomes.A(uv.alice, i) * model.outcomes.B(uv.bob, i);
    if (sign > 0) {
      sum += col[i];
    } else {
      sum -= col[i];
    }
  }
  return sum;
}

/// Signed CHSH combination <ab>_xy + <ab>_xy' + <ab>_x'y - <ab>_x'y'.
template <class T>
T chsh_combination(const HiddenVariableModel<T>& model) {
  T s(0);
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    T e = correlation(model, JointSetting::from_index(c));
    if (c == col_xpyp) {
      s -= e;
    } else {
      s += e;
    }
  }
  return s;
}

template <class T>
T chsh_s(const HiddenVariableModel<T>& model) {
  return abs_value(chsh_combination(model));
}

/// Every measurement-dependence measure of a model.
///
/// M1_given[v] compares Alice's two settings with Bob's setting fixed at v;
/// M2_given[u] compares Bob's two settings with Alice's fixed at u. M1/M2 take
/// the max over the fixed setting, Mhat1/Mhat2 the min. M additionally covers
/// the two "diagonal" pairs (x,y)-(x',y') and (x,y')-(x',y).
template <class T>
struct DependenceReport {
  T M1{0}, M2{0}, M{0}, Mhat1{0}, Mhat2{0};
  std::array<T, 2> M1_given{T(0), T(0)};  // indexed by Bob's Variant
  std::array<T, 2> M2_given{T(0), T(0)};  // indexed by Alice's Variant
  T F{1}, F1{1}, F2{1};

  friend bool operator==(const DependenceReport&, const DependenceReport&) = default;
};

template <class T>
DependenceReport<T> measurement_dependence(const HiddenVariableModel<T>& model) {
  require_valid(model);
  const auto& cols = model.cond.columns;
  DependenceReport<T> r;
  r.M1_given[0] = variational_distance(cols[col_xy], cols[col_xpy]);
  r.M1_given[1] = variational_distance(cols[col_xyp], cols[col_xpyp]);
  r.M2_given[0] = variational_distance(cols[col_xy], cols[col_xyp]);
  r.M2_given[1] = variational_distance(cols[col_xpy], cols[col_xpyp]);
  r.M1 = std::max(r.M1_given[0], r.M1_given[1]);
  r.Mhat1 = std::min(r.M1_given[0], r.M1_given[1]);
  r.M2 = std::max(r.M2_given[0], r.M2_given[1]);
  r.Mhat2 = std::min(r.M2_given[0], r.M2_given[1]);
  T diag1 = variational_distance(cols[col_xy], cols[col_xpyp]);
  T diag2 = variational_distance(cols[col_xyp], cols[col_xpy]);
  r.M = std::max({r.M1, r.M2, diag1, diag2});
  r.F = T(1) - r.M / T(2);
  r.F1 = T(1) - r.M1 / T(2);
  r.F2 = T(1) - r.M2 / T(2);
  return r;
}

template <class T>
DependenceReport<double> to_real(const DependenceReport<T>& r) {
  DependenceReport<double> out;
  out.M1 = to_double(r.M1);
  out.M2 = to_double(r.M2);
  out.M = to_double(r.M);
  out.Mhat1 = to_double(r.Mhat1);
  out.Mhat2 = to_double(r.Mhat2);
  for (std::size_t i = 0; i < 2; ++i) {
    out.M1_given[i] = to_double(r.M1_given[i]);
    out.M2_given[i] = to_double(r.M2_given[i]);
  }
  out.F = to_double(r.F);
  out.F1 = to_double(r.F1);
  out.F2 = to_double(r.F2);
  return out;
}

}  // namespace chshmd
