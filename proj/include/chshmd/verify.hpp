#pragma once

#include "chshmd/bounds.hpp"
#include "chshmd/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chshmd {

enum class VerifyLevel { quick, full };

/// Model builders under test. Defaults are the library constructors; tests
/// swap in deliberately broken ones.
struct ConstructorSet {
  std::function<ExactModel(const Rational&, const Rational&)> two_param;
  std::function<ExactModel(const ModelParams<Rational>&)> four_param;

  static ConstructorSet library();
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::full;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  ConstructorSet constructors = ConstructorSet::library();
  // Criteria to run (1-based); empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double seconds = 0.0;
  std::string detail;  // first failure, or a short summary on success

  std::string line() const;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool passed() const;
};

inline constexpr int kCriteriaCount = 10;

CriterionResult run_criterion(int id, const VerifyOptions& options);
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace chshmd
