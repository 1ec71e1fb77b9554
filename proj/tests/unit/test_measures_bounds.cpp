#include "chshmd/constructors.hpp"
#include "chshmd/measures.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace chshmd;

namespace {

const double kVT = 2.0 * (std::sqrt(2.0) - 1.0);

// Independent oracle: S straight from the definition, one column at a time.
Rational chsh_by_hand(const ExactModel& m) {
  Rational s(0);
  const int sign[4] = {1, 1, 1, -1};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::size_t c = 2 * a + b;
      for (std::size_t i = 0; i < m.lambda_count(); ++i) {
        s += sign[c] * m.outcomes.alice[a][i] * m.outcomes.bob[b][i] * m.cond.columns[c][i];
      }
    }
  }
  return abs_value(s);
}

Rational l1(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  Rational d(0);
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] > q[i] ? Rational(p[i] - q[i]) : Rational(q[i] - p[i]);
  return d;
}

}  // namespace

TEST_CASE("variational_distance") {
  const std::vector<double> a = {0.25, 0.25, 0.5};
  CHECK(variational_distance(a, a) == 0.0);
  CHECK(variational_distance(std::vector<double>{1, 0, 0, 0}, std::vector<double>{0, 1, 0, 0}) == 2.0);
  CHECK(variational_distance(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 0.75}) == 0.5);
  CHECK_THROWS_AS(variational_distance(std::vector<double>{1}, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("distinguish_probability") {
  CHECK(distinguish_probability(0) == 0.5);
  CHECK(distinguish_probability(2) == 1.0);
  CHECK(distinguish_probability(1) == 0.75);
  CHECK_THROWS_AS(distinguish_probability(2.5), std::domain_error);
  CHECK_THROWS_AS(distinguish_probability(-0.1), std::domain_error);
}

TEST_CASE("correlation and S") {
  SUBCASE("perfect correlation") {
    ExactModel m;
    m.outcomes = OutcomeTable(2);
    m.outcomes.alice[0] = {1, -1};
    m.outcomes.bob[0] = {1, -1};
    for (auto& col : m.cond.columns) col = {Rational(1, 3), Rational(2, 3)};
    CHECK(correlation(m, {Variant::unprimed, Variant::unprimed}) == 1);
  }
  SUBCASE("two-param model at (0, 0)") {
    const auto m = two_param_model(Rational(0), Rational(0));
    for (const auto& col : m.cond.columns) {
      for (const auto& p : col) CHECK(p == Rational(1, 4));
    }
    CHECK(correlation(m, {Variant::unprimed, Variant::unprimed}) == Rational(1, 2));
    CHECK(chsh_s(m) == 2);
  }
  SUBCASE("one-sided limit at (x', y') sums rows 3 and 5") {
    const auto m = interp_model(kVT, 0.0);
    const double s = std::sqrt(2.0) - 1.0;
    // Row 3 has A(x')B(y') = -1, row 5 has +1.
    CHECK(correlation(m, {Variant::primed, Variant::primed}) == doctest::Approx(-s + (1 - s)).epsilon(1e-12));
  }
  SUBCASE("Tsirelson and saturation values") {
    CHECK(chsh_s(two_param_model(kVT / 3, kVT / 3)) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(chsh_s(four_param_model(ModelParams<Rational>{1, 1, 1, 1})) == 4);
  }
  SUBCASE("property: library S matches the definition") {
    testgen::Engine rng(21);
    for (int i = 0; i < 300; ++i) {
      const ExactModel m = testgen::random_model(rng);
      CHECK(chsh_s(m) == chsh_by_hand(m));
    }
  }
}

TEST_CASE("measurement_dependence") {
  SUBCASE("two-param model (0.5, 0.2)") {
    const auto d = measurement_dependence(two_param_model(Rational(1, 2), Rational(1, 5)));
    CHECK(d.M1 == Rational(1, 2));
    CHECK(d.M2 == Rational(1, 5));
    CHECK(d.M == Rational(1, 2));
    CHECK(d.Mhat1 == Rational(1, 2));
    CHECK(d.Mhat2 == Rational(1, 5));
    CHECK(d.F == Rational(3, 4));
    CHECK(d.F1 == Rational(3, 4));
    CHECK(d.F2 == Rational(9, 10));
  }
  SUBCASE("independent model") {
    ExactModel m;
    m.outcomes = OutcomeTable(3);
    m.cond.columns.fill({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    const auto d = measurement_dependence(m);
    CHECK(d.M == 0);
    CHECK(d.M1 == 0);
    CHECK(d.M2 == 0);
    CHECK(d.F == 1);
    CHECK(d.F1 == 1);
    CHECK(d.F2 == 1);
  }
  SUBCASE("four-param model (1, 0.8, 0.5, 0.4)") {
    const auto d = measurement_dependence(
        four_param_model(ModelParams<Rational>{1, Rational(4, 5), Rational(1, 2), Rational(2, 5)}));
    CHECK(d.M1 == 1);
    CHECK(d.M2 == Rational(4, 5));
    CHECK(d.Mhat1 == Rational(1, 2));
    CHECK(d.Mhat2 == Rational(2, 5));
    CHECK(d.M1_given[0] == 1);
    CHECK(d.M1_given[1] == Rational(1, 2));
    CHECK(d.M2_given[0] == Rational(4, 5));
    CHECK(d.M2_given[1] == Rational(2, 5));
  }
  SUBCASE("property: report matches the definitions; chain, triangle and four-parameter bound hold") {
    testgen::Engine rng(33);
    for (int i = 0; i < 500; ++i) {
      const ExactModel m = testgen::random_model(rng);
      const auto& c = m.cond.columns;
      const auto d = measurement_dependence(m);
      CHECK(d.M1_given[0] == l1(c[col_xy], c[col_xpy]));
      CHECK(d.M1_given[1] == l1(c[col_xyp], c[col_xpyp]));
      CHECK(d.M2_given[0] == l1(c[col_xy], c[col_xyp]));
      CHECK(d.M2_given[1] == l1(c[col_xpy], c[col_xpyp]));
      CHECK(d.M == std::max({d.M1, d.M2, l1(c[col_xy], c[col_xpyp]), l1(c[col_xyp], c[col_xpy])}));
      CHECK(d.Mhat1 <= d.M1);
      CHECK(d.Mhat2 <= d.M2);
      CHECK(check_inequality_chain(d));
      const auto p = measured_params(d);
      CHECK(check_param_feasible(p).feasible);
      CHECK(chsh_s(m) <= bound_four_param(p));
      CHECK(bound_four_param(p) <= bound_two_param(d.M1, d.M2));
    }
  }
}

TEST_CASE("two-parameter bounds") {
  CHECK(v_g(kVT / 3, kVT / 3) == doctest::Approx(kVT).epsilon(1e-15));
  CHECK(v_g(kVT, 0.0) == doctest::Approx(kVT));
  CHECK(v_g(0.0, 0.0) == 0.0);
  CHECK(bound_two_param(Rational(2), Rational(2)) == 4);
  CHECK(bound_two_param(kVT / 3, kVT / 3) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bound_two_param(Rational(1), Rational(1, 2)) == 4);
  CHECK(bound_hall(kVT / 3) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bound_banik(kVT) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bound_hall(Rational(2)) == 4);
  CHECK_THROWS_AS(v_g(2.1, 0.0), ParameterError);
  CHECK_THROWS_AS(v_g(0.0, -0.1), ParameterError);
  CHECK_THROWS_AS(bound_banik(Rational(-1, 10)), ParameterError);

  SUBCASE("property: symmetry, monotonicity, range, reductions") {
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= 40; ++b) {
        const Rational m1(a, 20), m2(b, 20);
        const Rational v = v_g(m1, m2);
        CHECK(v == v_g(m2, m1));
        if (a < 40) CHECK(v_g(Rational(a + 1, 20), m2) >= v);
        if (b < 40) CHECK(v_g(m1, Rational(b + 1, 20)) >= v);
        CHECK(bound_two_param(m1, m2) >= 2);
        CHECK(bound_two_param(m1, m2) <= 4);
      }
      const Rational m(a, 20);
      CHECK(bound_two_param(m, m) == bound_hall(m));
      CHECK(bound_two_param(m, Rational(0)) == bound_banik(m));
    }
  }
}

TEST_CASE("four-parameter bound and feasibility") {
  using P = ModelParams<Rational>;
  CHECK(bound_four_param(P{1, 1, Rational(1, 5), Rational(1, 5)}) == Rational(17, 5));
  CHECK(bound_four_param(P{Rational(1, 2), Rational(1, 5), Rational(1, 2), Rational(1, 5)}) == Rational(29, 10));
  CHECK(bound_four_param(P{Rational(1, 2), Rational(1, 5), std::nullopt, std::nullopt}) == Rational(29, 10));
  for (double z : {0.0, 0.05, 0.1, 0.2, kVT / 3}) {
    const double b = bound_four_param(ModelParams<double>{kVT / 3 + 2 * z, kVT / 3 + 2 * z, kVT / 3 - z, kVT / 3 - z});
    CHECK(b == doctest::Approx(2 + kVT).epsilon(1e-14));
  }

  const auto v = check_param_feasible(P{2, 0, 0, 0});
  CHECK_FALSE(v.feasible);
  REQUIRE(v.violated.size() == 1);
  CHECK(v.violated[0] == "M1 - Mhat1 <= M2 + Mhat2");
  CHECK(check_param_feasible(P{1, 1, 1, 1}).feasible);
  const auto w = check_param_feasible(P{Rational(1, 2), Rational(1, 5), Rational(3, 5), Rational(1, 5)});
  CHECK_FALSE(w.feasible);
  CHECK(w.violated[0] == "Mhat1 <= M1");
  CHECK_THROWS_AS(bound_four_param(P{2, 0, 0, 0}), InfeasibleParams);
  try {
    bound_four_param(P{2, 0, 0, 0});
  } catch (const InfeasibleParams& e) {
    CHECK(std::string(e.what()).find("M1 - Mhat1 <= M2 + Mhat2") != std::string::npos);
  }
  // Rounding residue in floating inputs is not an infeasibility.
  CHECK(check_param_feasible(ModelParams<double>{0.3, 0.2, 0.1 + 0.2, -1e-17}).feasible);

  SUBCASE("property: four-parameter bound never exceeds the two-parameter one") {
    testgen::Engine rng(1);
    for (int i = 0; i < 500; ++i) {
      const P p = testgen::random_feasible(rng);
      CHECK(bound_four_param(p) <= bound_two_param(p.M1, p.M2));
      CHECK(bound_four_param(p) >= 2);
    }
  }
}

TEST_CASE("check_inequality_chain") {
  CHECK(check_inequality_chain(measurement_dependence(two_param_model(Rational(1, 2), Rational(1, 5)))));
  DependenceReport<Rational> r;
  r.M1 = 1;
  r.M2 = 1;
  r.M = 2;
  CHECK(check_inequality_chain(r));
  r.M2 = 0;
  r.M = Rational(1, 2);
  CHECK_FALSE(check_inequality_chain(r));
}
