#pragma once

#include "chshmd/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chshmd {

// ---------------------------------------------------------------------------
// Settings
// ---------------------------------------------------------------------------

enum class Party : std::uint8_t { Alice, Bob };
enum class Variant : std::uint8_t { unprimed, primed };

/// One local measurement setting: Alice picks x or x', Bob picks y or y'.
struct SettingLabel {
  Party party;
  Variant variant;

  friend bool operator==(const SettingLabel&, const SettingLabel&) = default;
};

/// Joint setting (u, v). Column order everywhere is (x,y), (x,y'), (x',y), (x',y').
struct JointSetting {
  Variant alice;
  Variant bob;

  constexpr std::size_t index() const {
    return 2 * static_cast<std::size_t>(alice) + static_cast<std::size_t>(bob);
  }
  static constexpr JointSetting from_index(std::size_t i) {
    return {static_cast<Variant>(i / 2), static_cast<Variant>(i % 2)};
  }
  friend bool operator==(const JointSetting&, const JointSetting&) = default;
};

inline constexpr std::size_t kJointSettings = 4;
inline constexpr std::array<const char*, kJointSettings> kJointSettingNames = {"x,y", "x,y'", "x',y", "x',y'"};
inline constexpr std::array<const char*, 2> kAliceSettingNames = {"x", "x'"};
inline constexpr std::array<const char*, 2> kBobSettingNames = {"y", "y'"};

inline constexpr std::size_t col_xy = 0;
inline constexpr std::size_t col_xyp = 1;
inline constexpr std::size_t col_xpy = 2;
inline constexpr std::size_t col_xpyp = 3;

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// Deterministic outcomes A(u, lambda_i), B(v, lambda_i) in {-1, +1}.
struct OutcomeTable {
  std::size_t lambda_count = 0;
  std::array<std::vector<int>, 2> alice;  // indexed by Variant, then lambda
  std::array<std::vector<int>, 2> bob;

  OutcomeTable() = default;
  explicit OutcomeTable(std::size_t n) : lambda_count(n) {
    for (auto& row : alice) row.assign(n, 1);
    for (auto& row : bob) row.assign(n, 1);
  }

  int A(Variant u, std::size_t i) const { return alice[static_cast<std::size_t>(u)][i]; }
  int B(Variant v, std::size_t i) const { return bob[static_cast<std::size_t>(v)][i]; }

  friend bool operator==(const OutcomeTable&, const OutcomeTable&) = default;
};

/// p(lambda_i | u, v), one column per joint setting.
template <class T>
struct ConditionalTable {
  std::array<std::vector<T>, kJointSettings> columns;

  std::size_t lambda_count() const { return columns[0].size(); }
  const T& at(std::size_t col, std::size_t i) const { return columns[col][i]; }
  T& at(std::size_t col, std::size_t i) { return columns[col][i]; }

  friend bool operator==(const ConditionalTable&, const ConditionalTable&) = default;
};

template <class T>
struct SettingsDistribution {
  std::array<T, kJointSettings> q;

  static SettingsDistribution uniform() {
    SettingsDistribution s;
    s.q.fill(frac<T>(1, 4));
    return s;
  }
  friend bool operator==(const SettingsDistribution&, const SettingsDistribution&) = default;
};

template <class T>
struct HiddenVariableModel {
  OutcomeTable outcomes;
  ConditionalTable<T> cond;
  SettingsDistribution<T> settings = SettingsDistribution<T>::uniform();
  std::string label;

  std::size_t lambda_count() const { return outcomes.lambda_count; }

  /// Exact equality of outcomes, probabilities and settings (label ignored).
  bool same_tables(const HiddenVariableModel& other) const {
    return outcomes == other.outcomes && cond == other.cond && settings == other.settings;
  }
};

using ExactModel = HiddenVariableModel<Rational>;
using RealModel = HiddenVariableModel<double>;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
  enum class Kind { dimension, non_sign_outcome, negative_probability, column_sum, settings_sum, negative_setting };
  Kind kind;
  std::string where;  // e.g. "cond_probs[x,y'][2]"
  double magnitude = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {
inline constexpr double kNegativeGuard = 1e-15;

std::string format_double(double v);
}  // namespace detail

template <class T>
ValidationReport validate_model(const HiddenVariableModel<T>& model) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::string where, double magnitude, std::string message) {
    report.violations.push_back({kind, std::move(where), magnitude, std::move(message)});
  };

  const std::size_t n = model.outcomes.lambda_count;
  if (n == 0) add(Violation::Kind::dimension, "lambda_count", 0.0, "lambda_count must be positive");
  for (std::size_t s = 0; s < 2; ++s) {
    if (model.outcomes.alice[s].size() != n) {
      add(Violation::Kind::dimension, std::string("outcomes.A[") + kAliceSettingNames[s] + "]",
          static_cast<double>(model.outcomes.alice[s].size()), "length differs from lambda_count");
    }
    if (model.outcomes.bob[s].size() != n) {
      add(Violation::Kind::dimension, std::string("outcomes.B[") + kBobSettingNames[s] + "]",
          static_cast<double>(model.outcomes.bob[s].size()), "length differs from lambda_count");
    }
  }
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    if (model.cond.columns[c].size() != n) {
      add(Violation::Kind::dimension, std::string("cond_probs[") + kJointSettingNames[c] + "]",
          static_cast<double>(model.cond.columns[c].size()), "length differs from lambda_count");
    }
  }
  if (!report.ok()) return report;

  auto check_signs = [&](const std::vector<int>& row, const std::string& name) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 1 && row[i] != -1) {
        add(Violation::Kind::non_sign_outcome, name + "[" + std::to_string(i) + "]", row[i],
            "outcome must be -1 or +1");
      }
    }
  };
  for (std::size_t s = 0; s < 2; ++s) {
    check_signs(model.outcomes.alice[s], std::string("outcomes.A[") + kAliceSettingNames[s] + "]");
    check_signs(model.outcomes.bob[s], std::string("outcomes.B[") + kBobSettingNames[s] + "]");
  }

  for (std::size_t c = 0; c < kJointSettings; ++c) {
    const std::string col = std::string("cond_probs[") + kJointSettingNames[c] + "]";
    T sum(0);
    for (std::size_t i = 0; i < n; ++i) {
      const T& p = model.cond.columns[c][i];
      sum += p;
      bool negative = false;
      if constexpr (is_exact_v<T>) {
        negative = p < 0;
      } else {
        negative = p < -detail::kNegativeGuard;
      }
      if (negative) {
        add(Violation::Kind::negative_probability, col + "[" + std::to_string(i) + "]", to_double(p),
            "probability is negative");
      }
    }
    if (!approx_equal(sum, T(1))) {
      add(Violation::Kind::column_sum, col, to_double(sum),
          "column sums to " + detail::format_double(to_double(sum)) + ", expected 1");
    }
  }

  T total(0);
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    const T& q = model.settings.q[c];
    total += q;
    if (q < T(0)) {
      add(Violation::Kind::negative_setting, std::string("settings[") + kJointSettingNames[c] + "]", to_double(q),
          "settings probability is negative");
    }
  }
  if (!approx_equal(total, T(1))) {
    add(Violation::Kind::settings_sum, "settings", to_double(total),
        "settings distribution sums to " + detail::format_double(to_double(total)) + ", expected 1");
  }
  return report;
}

template <class T>
void require_valid(const HiddenVariableModel<T>& model) {
  ValidationReport report = validate_model(model);
  if (!report.ok()) throw ValidationError(std::move(report));
}

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

/// p(lambda_i) = sum_{u,v} q(u,v) p(lambda_i | u,v).
template <class T>
std::vector<T> marginal_lambda(const HiddenVariableModel<T>& model) {
  require_valid(model);
  std::vector<T> p(model.lambda_count(), T(0));
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += model.settings.q[c] * model.cond.columns[c][i];
  }
  return p;
}

/// Exchanges the roles of Alice and Bob (x<->y, x'<->y', A<->B).
template <class T>
HiddenVariableModel<T> swap_parties(const HiddenVariableModel<T>& model) {
  HiddenVariableModel<T> out;
  out.label = model.label;
  out.outcomes.lambda_count = model.outcomes.lambda_count;
  out.outcomes.alice = model.outcomes.bob;
  out.outcomes.bob = model.outcomes.alice;
  // New column (u, v) is the old column (v, u) read with the parties exchanged.
  static constexpr std::array<std::size_t, kJointSettings> perm = {col_xy, col_xpy, col_xyp, col_xpyp};
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    out.cond.columns[c] = model.cond.columns[perm[c]];
    out.settings.q[c] = model.settings.q[perm[c]];
  }
  return out;
}

template <class T>
RealModel to_real(const HiddenVariableModel<T>& model) {
  RealModel out;
  out.outcomes = model.outcomes;
  out.label = model.label;
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    out.cond.columns[c].reserve(model.cond.columns[c].size());
    for (const T& p : model.cond.columns[c]) out.cond.columns[c].push_back(to_double(p));
    out.settings.q[c] = to_double(model.settings.q[c]);
  }
  return out;
}

}  // namespace chshmd
