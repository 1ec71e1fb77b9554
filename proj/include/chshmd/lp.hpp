#pragma once

#include "chshmd/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace chshmd {

enum class RowSense { le, eq, ge };

/// maximize objective . x subject to rows, x >= 0. Rows are stored sparsely.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    RowSense sense = RowSense::le;
    Rational rhs{0};
  };

  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n, Rational(0)) {}

  void add_row(std::vector<std::pair<std::size_t, Rational>> terms, RowSense sense, Rational rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* status_name(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value{0};
  std::vector<Rational> x;  // primal vertex, only for optimal
  std::size_t pivots = 0;
};

/// Two-phase primal simplex on a dense exact tableau with Bland's rule.
LpResult lp_solve(const LinearProgram& lp);

}  // namespace chshmd
