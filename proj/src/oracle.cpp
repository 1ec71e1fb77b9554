#include "chshmd/oracle.hpp"

#include "chshmd/measures.hpp"

namespace chshmd {

namespace {

// Column pairs compared by each bounded distance, in DistanceBounds order.
constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kDistancePairs = {{
    {col_xy, col_xpy},    // M1 given y
    {col_xyp, col_xpyp},  // M1 given y'
    {col_xy, col_xyp},    // M2 given x
    {col_xpy, col_xpyp},  // M2 given x'
}};

constexpr std::size_t kProbVars = kJointSettings * kAtoms;

std::size_t p_index(std::size_t setting, std::size_t atom) { return setting * kAtoms + atom; }
std::size_t t_index(std::size_t distance, std::size_t atom) { return kProbVars + distance * kAtoms + atom; }

}  // namespace

const std::array<StrategyAtom, kAtoms>& canonical_strategies() {
  static const std::array<StrategyAtom, kAtoms> atoms = [] {
    std::array<StrategyAtom, kAtoms> out{};
    for (std::size_t k = 0; k < kAtoms; ++k) {
      for (int slot = 0; slot < 4; ++slot) out[k].signs[slot] = (k >> (3 - slot)) & 1 ? -1 : 1;
    }
    return out;
  }();
  return atoms;
}

OutcomeTable canonical_outcomes() {
  OutcomeTable table(kAtoms);
  const auto& atoms = canonical_strategies();
  for (std::size_t k = 0; k < kAtoms; ++k) {
    for (int v = 0; v < 2; ++v) {
      table.alice[v][k] = atoms[k].signs[v];
      table.bob[v][k] = atoms[k].signs[2 + v];
    }
  }
  return table;
}

std::string Branch::name() const {
  return std::string("Mhat1 on M1[") + kBobSettingNames[static_cast<int>(alice_tight)] + "], Mhat2 on M2[" +
         kAliceSettingNames[static_cast<int>(bob_tight)] + "]";
}

LinearProgram chsh_program(const DistanceBounds& bounds, bool negate) {
  // Variables: p_k^s for 4 settings x 16 atoms, then t_k^d >= (p_a - p_b)_k.
  // With both columns normalized, sum_k |p_a - p_b| = 2 sum_k (p_a - p_b)^+,
  // so the L1 bound D <= M becomes sum_k t_k^d <= M/2.
  LinearProgram lp(kProbVars + 4 * kAtoms);
  const auto& atoms = canonical_strategies();
  for (std::size_t s = 0; s < kJointSettings; ++s) {
    const JointSetting uv = JointSetting::from_index(s);
    int sign = s == col_xpyp ? -1 : 1;
    if (negate) sign = -sign;
    for (std::size_t k = 0; k < kAtoms; ++k) {
      lp.objective[p_index(s, k)] = sign * atoms[k].A(uv.alice) * atoms[k].B(uv.bob);
    }
  }
  for (std::size_t s = 0; s < kJointSettings; ++s) {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (std::size_t k = 0; k < kAtoms; ++k) terms.emplace_back(p_index(s, k), Rational(1));
    lp.add_row(std::move(terms), RowSense::eq, Rational(1));
  }
  for (std::size_t d = 0; d < 4; ++d) {
    const auto [a, b] = kDistancePairs[d];
    std::vector<std::pair<std::size_t, Rational>> sum;
    for (std::size_t k = 0; k < kAtoms; ++k) {
      lp.add_row({{p_index(a, k), Rational(1)}, {p_index(b, k), Rational(-1)}, {t_index(d, k), Rational(-1)}},
                 RowSense::le, Rational(0));
      sum.emplace_back(t_index(d, k), Rational(1));
    }
    lp.add_row(std::move(sum), RowSense::le, Rational(bounds[d] / 2));
  }
  return lp;
}

OracleResult solve_chsh_program(const DistanceBounds& bounds, const OracleOptions& options) {
  const LpResult sol = lp_solve(chsh_program(bounds, options.negate));
  if (sol.status != LpStatus::optimal) {
    // Uniform columns are always feasible and the objective is bounded by 4.
    throw std::logic_error(std::string("CHSH program not optimal: ") + status_name(sol.status));
  }
  OracleResult out;
  out.s_max = sol.value;
  out.lp_pivots = sol.pivots;
  out.witness.outcomes = canonical_outcomes();
  out.witness.label = "oracle witness";
  for (std::size_t s = 0; s < kJointSettings; ++s) {
    auto& col = out.witness.cond.columns[s];
    col.resize(kAtoms);
    for (std::size_t k = 0; k < kAtoms; ++k) col[k] = sol.x[p_index(s, k)];
  }
  return out;
}

OracleResult max_s_two_param(const Rational& m1, const Rational& m2, const OracleOptions& options) {
  detail::require_unit_range(m1, "M1");
  detail::require_unit_range(m2, "M2");
  return solve_chsh_program({m1, m1, m2, m2}, options);
}

OracleResult max_s_four_param(const ModelParams<Rational>& params, const OracleOptions& options) {
  require_feasible(params);
  const Rational h1 = params.mhat1(), h2 = params.mhat2();
  OracleResult best;
  bool first = true;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      DistanceBounds bounds = {params.M1, params.M1, params.M2, params.M2};
      bounds[a] = h1;
      bounds[2 + b] = h2;
      OracleResult r = solve_chsh_program(bounds, options);
      const Branch branch{static_cast<Variant>(a), static_cast<Variant>(b)};
      const std::size_t pivots = best.lp_pivots + r.lp_pivots;
      if (first || r.s_max > best.s_max) {
        best = std::move(r);
        best.branches = {branch};
        first = false;
      } else if (r.s_max == best.s_max) {
        best.branches.push_back(branch);
      }
      best.lp_pivots = pivots;
    }
  }
  return best;
}

SignVerdict check_sign_conditions(const ExactModel& model) {
  require_valid(model);
  if (model.lambda_count() != 4) {
    throw std::invalid_argument("check_sign_conditions: expected a four-valued saturating model");
  }
  // Outcome pattern (c,c,c,c), (d,-d,d,d), (e,e,e,-e), (f,-f,-f,f) for some signs.
  constexpr std::array<std::array<int, 4>, 4> pattern = {{{1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, 1, -1}, {1, -1, -1, 1}}};
  const auto& o = model.outcomes;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::array<int, 4> row = {o.A(Variant::unprimed, i), o.A(Variant::primed, i), o.B(Variant::unprimed, i),
                                    o.B(Variant::primed, i)};
    for (std::size_t slot = 0; slot < 4; ++slot) {
      if (row[slot] * row[0] != pattern[i][slot]) {
        throw std::invalid_argument("check_sign_conditions: outcome table is not of the four-valued saturating family");
      }
    }
  }

  struct Rule {
    std::size_t lhs, rhs;
    std::array<int, 4> sign;  // +1: difference >= 0, -1: difference <= 0
  };
  constexpr std::array<Rule, 3> rules = {{
      {col_xy, col_xyp, {1, 1, 1, -1}},
      {col_xpy, col_xpyp, {1, -1, 1, 1}},
      {col_xyp, col_xpyp, {1, 1, -1, -1}},
  }};

  SignVerdict v;
  const auto& c = model.cond.columns;
  for (const auto& rule : rules) {
    for (std::size_t i = 0; i < 4; ++i) {
      Rational diff = c[rule.lhs][i] - c[rule.rhs][i];
      if (rule.sign[i] * diff.sign() < 0) {
        v.ok = false;
        v.failures.push_back("p(l" + std::to_string(i + 1) + "|" + kJointSettingNames[rule.lhs] + ") - p(l" +
                             std::to_string(i + 1) + "|" + kJointSettingNames[rule.rhs] + ") = " + to_string(diff) +
                             (rule.sign[i] > 0 ? " should be >= 0" : " should be <= 0"));
      }
    }
  }
  return v;
}

}  // namespace chshmd
