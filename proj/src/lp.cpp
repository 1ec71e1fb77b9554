#include "chshmd/lp.hpp"

#include <gmp.h>

#include <limits>
#include <stdexcept>

namespace chshmd {

void LinearProgram::add_row(std::vector<std::pair<std::size_t, Rational>> terms, RowSense sense, Rational rhs) {
  for (const auto& [j, a] : terms) {
    if (j >= num_vars) throw std::out_of_range("LinearProgram::add_row: variable index out of range");
  }
  rows.push_back({std::move(terms), sense, std::move(rhs)});
}

const char* status_name(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), cells_((rows + 1) * (cols + 1)), basis_(rows, kNone) {}

  Rational& at(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }
  Rational& rhs(std::size_t i) { return at(i, n_); }
  Rational& obj(std::size_t j) { return at(m_, j); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  // Gauss-Jordan step; only the nonzero columns of the pivot row are touched.
  void pivot(std::size_t r, std::size_t c) {
    mpq_t inv, factor, tmp;
    mpq_inits(inv, factor, tmp, nullptr);
    mpq_inv(inv, at(r, c).backend().data());

    nonzero_.clear();
    for (std::size_t j = 0; j <= n_; ++j) {
      mpq_ptr v = at(r, j).backend().data();
      if (mpq_sgn(v) != 0) {
        mpq_mul(v, v, inv);
        nonzero_.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      mpq_ptr head = at(i, c).backend().data();
      if (mpq_sgn(head) == 0) continue;
      mpq_set(factor, head);
      for (std::size_t j : nonzero_) {
        mpq_mul(tmp, factor, at(r, j).backend().data());
        mpq_ptr dst = at(i, j).backend().data();
        mpq_sub(dst, dst, tmp);
      }
    }
    basis_[r] = c;
    mpq_clears(inv, factor, tmp, nullptr);
    ++pivots_;
  }

  std::size_t pivots() const { return pivots_; }

  // Runs the simplex loop on the objective row. Columns with allowed[j] false
  // never enter. Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    mpq_t best, ratio;
    mpq_inits(best, ratio, nullptr);
    bool bounded = true;
    for (;;) {
      // Bland: lowest-index improving column.
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed[j] && obj(j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) break;

      std::size_t leave = kNone;
      for (std::size_t i = 0; i < m_; ++i) {
        mpq_srcptr a = at(i, enter).backend().data();
        if (mpq_sgn(a) <= 0) continue;
        mpq_div(ratio, rhs(i).backend().data(), a);
        int cmp = leave == kNone ? -1 : mpq_cmp(ratio, best);
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          mpq_set(best, ratio);
        }
      }
      if (leave == kNone) {
        bounded = false;
        break;
      }
      pivot(leave, enter);
    }
    mpq_clears(best, ratio, nullptr);
    return bounded;
  }

 private:
  std::size_t m_, n_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) throw std::invalid_argument("lp_solve: objective length mismatch");
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;

  // Column layout: originals, then one slack/surplus per inequality, then one
  // artificial per row that has no ready-made basic slack.
  std::size_t slack_count = 0, art_count = 0;
  std::vector<int> flip(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    RowSense sense = row.sense;
    if (row.rhs < 0) {
      flip[i] = -1;
      if (sense == RowSense::le) sense = RowSense::ge;
      else if (sense == RowSense::ge) sense = RowSense::le;
    }
    if (sense != RowSense::eq) ++slack_count;
    if (sense != RowSense::le) ++art_count;
  }
  const std::size_t first_slack = n;
  const std::size_t first_art = n + slack_count;
  const std::size_t cols = first_art + art_count;

  Tableau t(m, cols);
  std::vector<bool> is_art(cols, false);
  std::size_t next_slack = first_slack, next_art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (const auto& [j, a] : row.terms) t.at(i, j) += flip[i] > 0 ? a : Rational(-a);
    t.rhs(i) = flip[i] > 0 ? row.rhs : Rational(-row.rhs);
    RowSense sense = row.sense;
    if (flip[i] < 0 && sense != RowSense::eq) sense = sense == RowSense::le ? RowSense::ge : RowSense::le;
    if (sense == RowSense::le) {
      t.at(i, next_slack) = 1;
      t.basis(i) = next_slack++;
    } else {
      if (sense == RowSense::ge) t.at(i, next_slack++) = -1;
      t.at(i, next_art) = 1;
      is_art[next_art] = true;
      t.basis(i) = next_art++;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);

  if (art_count > 0) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t j = first_art; j < cols; ++j) t.obj(j) = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis(i)]) continue;
      for (std::size_t j = 0; j <= cols; ++j) t.obj(j) -= t.at(i, j);
    }
    t.optimize(allowed);
    if (t.obj(cols) != 0) {
      result.status = LpStatus::infeasible;
      result.pivots = t.pivots();
      return result;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis(i)]) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (t.at(i, j) != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  // Phase 2 objective row: -c, then eliminate basic columns.
  for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = -lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t b = t.basis(i);
    if (t.obj(b) == 0) continue;
    Rational f = t.obj(b);
    for (std::size_t j = 0; j <= cols; ++j) {
      if (t.at(i, j) != 0) t.obj(j) -= f * t.at(i, j);
    }
  }

  bool bounded = t.optimize(allowed);
  result.pivots = t.pivots();
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.value = t.obj(cols);
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis(i) < n) result.x[t.basis(i)] = t.rhs(i);
  }
  return result;
}

}  // namespace chshmd
