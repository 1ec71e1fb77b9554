#pragma once

#include "chshmd/bounds.hpp"
#include "chshmd/lp.hpp"
#include "chshmd/model.hpp"

#include <array>
#include <string>
#include <vector>

namespace chshmd {

/// One of the 16 deterministic local response functions, as signs
/// (A(x), A(x'), B(y), B(y')). Atom k takes -1 wherever bit (3 - slot) of k is
/// set, so atom 0 is (+,+,+,+) and atom 15 is (-,-,-,-).
struct StrategyAtom {
  std::array<int, 4> signs;
  int A(Variant u) const { return signs[static_cast<int>(u)]; }
  int B(Variant v) const { return signs[2 + static_cast<int>(v)]; }
};

inline constexpr std::size_t kAtoms = 16;

const std::array<StrategyAtom, kAtoms>& canonical_strategies();

/// Outcome table whose lambda_k behaves like atom k.
OutcomeTable canonical_outcomes();

/// Which of Alice's two distances is held to Mhat1 (by Bob's fixed setting),
/// and which of Bob's is held to Mhat2 (by Alice's fixed setting).
struct Branch {
  Variant alice_tight;  // bounds M1_given[alice_tight] <= Mhat1
  Variant bob_tight;    // bounds M2_given[bob_tight] <= Mhat2
  std::string name() const;
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct OracleResult {
  Rational s_max{0};
  ExactModel witness;
  std::vector<Branch> branches;  // every attaining branch; empty for the two-parameter problem
  std::size_t lp_pivots = 0;
};

struct OracleOptions {
  // Maximize minus the CHSH combination instead.
  bool negate = false;
};

/// Per-distance upper bounds, indexed M1_given[y], M1_given[y'], M2_given[x], M2_given[x'].
using DistanceBounds = std::array<Rational, 4>;

/// The CHSH linear program over the 16 atoms with the given distance bounds.
LinearProgram chsh_program(const DistanceBounds& bounds, bool negate = false);

/// Solves chsh_program; returns the optimum and the witness model.
OracleResult solve_chsh_program(const DistanceBounds& bounds, const OracleOptions& options = {});

/// Maximal CHSH combination with M1 and M2 bounded. Equals bound_two_param exactly.
OracleResult max_s_two_param(const Rational& m1, const Rational& m2, const OracleOptions& options = {});

/// Maximal CHSH combination under all four parameters: one LP per branch.
OracleResult max_s_four_param(const ModelParams<Rational>& params, const OracleOptions& options = {});

struct SignVerdict {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Row-by-row sign patterns of the column differences of a four-valued
/// saturating model (valid while M2 + Mhat1 + Mhat2 <= 2):
///   (x,y) - (x,y')      >= 0 for l1, l2, l3 and <= 0 for l4
///   (x',y) - (x',y')    >= 0 for l1, l3, l4 and <= 0 for l2
///   (x,y') - (x',y')    >= 0 for l1, l2 and <= 0 for l3, l4
/// Throws std::invalid_argument for a model outside the four-valued family.
SignVerdict check_sign_conditions(const ExactModel& model);

}  // namespace chshmd
