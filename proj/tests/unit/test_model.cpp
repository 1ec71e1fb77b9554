#include "chshmd/constructors.hpp"
#include "chshmd/measures.hpp"
#include "chshmd/model_io.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace chshmd;

namespace {

ExactModel uniform_model(std::size_t n) {
  ExactModel m;
  m.outcomes = OutcomeTable(n);
  for (auto& col : m.cond.columns) col.assign(n, Rational(1, static_cast<long>(n)));
  return m;
}

bool has_kind(const ValidationReport& r, Violation::Kind k) {
  for (const auto& v : r.violations) {
    if (v.kind == k) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/8") == Rational(3, 8));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1.5e-1") == Rational(3, 20));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("0.08/0.09") == Rational(8, 9));
  CHECK(parse_rational(" 4/6 ") == Rational(2, 3));
  CHECK(to_string(Rational(4, 6)) == "2/3");
  CHECK(to_string(Rational(-3)) == "-3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_FALSE(looks_rational("VT/3"));
}

TEST_CASE("joint setting indices follow the column order") {
  CHECK(JointSetting{Variant::unprimed, Variant::unprimed}.index() == col_xy);
  CHECK(JointSetting{Variant::unprimed, Variant::primed}.index() == col_xyp);
  CHECK(JointSetting{Variant::primed, Variant::unprimed}.index() == col_xpy);
  CHECK(JointSetting{Variant::primed, Variant::primed}.index() == col_xpyp);
  for (std::size_t c = 0; c < kJointSettings; ++c) CHECK(JointSetting::from_index(c).index() == c);
}

TEST_CASE("validate_model") {
  SUBCASE("two-param model at (0.4, 0.2) is valid") {
    CHECK(validate_model(two_param_model(Rational(2, 5), Rational(1, 5))).ok());
    CHECK(validate_model(two_param_model(0.4, 0.2)).ok());
  }
  SUBCASE("column summing to 0.9 is named") {
    ExactModel m = uniform_model(4);
    m.cond.columns[col_xpy][2] -= Rational(1, 10);
    const auto r = validate_model(m);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::column_sum);
    CHECK(r.violations[0].where == "cond_probs[x',y]");
    CHECK(r.violations[0].magnitude == doctest::Approx(0.9));
  }
  SUBCASE("zero outcome is flagged") {
    ExactModel m = uniform_model(4);
    m.outcomes.alice[0][0] = 0;
    const auto r = validate_model(m);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::non_sign_outcome);
    CHECK(r.violations[0].where == "outcomes.A[x][0]");
  }
  SUBCASE("negative entries and dimension mismatch") {
    ExactModel m = uniform_model(2);
    m.cond.columns[0] = {Rational(3, 2), Rational(-1, 2)};
    CHECK(has_kind(validate_model(m), Violation::Kind::negative_probability));
    m.cond.columns[1].push_back(Rational(0));
    CHECK(has_kind(validate_model(m), Violation::Kind::dimension));
  }
  SUBCASE("floating tolerance") {
    RealModel m = to_real(uniform_model(3));
    m.cond.columns[0][0] += 5e-13;
    CHECK(validate_model(m).ok());
    m.cond.columns[0][0] += 1e-9;
    CHECK_FALSE(validate_model(m).ok());
    RealModel g = to_real(uniform_model(2));
    g.cond.columns[1] = {1.0 + 1e-16, -1e-16};
    CHECK(validate_model(g).ok());
  }
  SUBCASE("settings distribution") {
    ExactModel m = uniform_model(2);
    m.settings.q = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(-1, 2)};
    const auto r = validate_model(m);
    CHECK(has_kind(r, Violation::Kind::negative_setting));
    CHECK_FALSE(has_kind(r, Violation::Kind::settings_sum));
  }
  SUBCASE("require_valid throws with the report") {
    ExactModel m = uniform_model(2);
    m.cond.columns[3][0] = Rational(0);
    CHECK_THROWS_AS(require_valid(m), ValidationError);
    CHECK_THROWS_AS(chsh_s(m), ValidationError);
  }
}

TEST_CASE("marginal_lambda") {
  SUBCASE("symmetric Tsirelson model has a uniform marginal") {
    const Rational m(1, 5);
    const auto pl = marginal_lambda(two_param_model(m, m));
    for (const auto& p : pl) CHECK(p == Rational(1, 4));
    const double vt3 = 2.0 * (std::sqrt(2.0) - 1.0) / 3.0;
    for (double p : marginal_lambda(two_param_model(vt3, vt3))) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("independent model gives its column") {
    ExactModel m = uniform_model(3);
    m.cond.columns.fill({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
    CHECK(marginal_lambda(m) == m.cond.columns[0]);
  }
  SUBCASE("one-sided Tsirelson limit") {
    const double s = std::sqrt(2.0) - 1.0;
    const auto pl = marginal_lambda(interp_model(2.0 * s, 0.0));
    CHECK(pl[0] == 0.0);
    CHECK(pl[1] == 0.0);
    CHECK(pl[3] == 0.0);
    CHECK(pl[2] == doctest::Approx(s / 2).epsilon(1e-12));
    CHECK(pl[4] == doctest::Approx(1 - s / 2).epsilon(1e-12));
  }
  SUBCASE("property: marginal is a probability vector, including non-uniform settings") {
    testgen::Engine rng(7);
    for (int i = 0; i < 200; ++i) {
      const ExactModel m = testgen::random_model_with_settings(rng);
      const auto pl = marginal_lambda(m);
      Rational sum(0);
      for (const auto& p : pl) {
        CHECK(p >= 0);
        sum += p;
      }
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("swap_parties") {
  SUBCASE("exchanges M1 and M2") {
    const auto d = measurement_dependence(swap_parties(two_param_model(Rational(1, 2), Rational(1, 5))));
    CHECK(d.M1 == Rational(1, 5));
    CHECK(d.M2 == Rational(1, 2));
  }
  SUBCASE("party-symmetric model keeps its report") {
    const auto m = two_param_model(Rational(1, 3), Rational(1, 3));
    CHECK(measurement_dependence(swap_parties(m)) == measurement_dependence(m));
  }
  SUBCASE("property: involution, S preserved, parameters exchanged") {
    testgen::Engine rng(11);
    for (int i = 0; i < 300; ++i) {
      const ExactModel m = testgen::random_model_with_settings(rng);
      const ExactModel s = swap_parties(m);
      CHECK(swap_parties(s).same_tables(m));
      CHECK(chsh_s(s) == chsh_s(m));
      const auto a = measurement_dependence(m), b = measurement_dependence(s);
      CHECK(b.M1 == a.M2);
      CHECK(b.M2 == a.M1);
      CHECK(b.Mhat1 == a.Mhat2);
      CHECK(b.Mhat2 == a.Mhat1);
      CHECK(b.M == a.M);
    }
  }
}

TEST_CASE("model JSON") {
  SUBCASE("exact round trip is bit-exact") {
    testgen::Engine rng(3);
    for (int i = 0; i < 50; ++i) {
      ExactModel m = testgen::random_model_with_settings(rng);
      m.label = "case " + std::to_string(i);
      const AnyModel back = parse_model(model_to_json(m));
      REQUIRE(std::holds_alternative<ExactModel>(back));
      const auto& e = std::get<ExactModel>(back);
      CHECK(e.same_tables(m));
      CHECK(e.label == m.label);
    }
  }
  SUBCASE("floating round trip") {
    testgen::Engine rng(5);
    for (int i = 0; i < 50; ++i) {
      const RealModel m = testgen::random_real_model(rng);
      const AnyModel back = parse_model(model_to_json(m));
      REQUIRE(std::holds_alternative<RealModel>(back));
      const auto& r = std::get<RealModel>(back);
      for (std::size_t c = 0; c < kJointSettings; ++c) {
        for (std::size_t k = 0; k < m.lambda_count(); ++k) {
          CHECK(std::fabs(r.cond.columns[c][k] - m.cond.columns[c][k]) <= 1e-15);
        }
      }
    }
  }
  SUBCASE("output is deterministic with stable keys") {
    const auto m = two_param_model(Rational(1, 2), Rational(1, 5));
    const std::string a = model_to_json(m), b = model_to_json(m);
    CHECK(a == b);
    CHECK(a.find("\"lambda_count\"") < a.find("\"outcomes\""));
    CHECK(a.find("\"outcomes\"") < a.find("\"cond_probs\""));
    CHECK(a.find("\"19/80\"") != std::string::npos);
  }
  SUBCASE("mixed entries give a floating model; settings optional") {
    const std::string text = R"({"lambda_count": 2,
      "outcomes": {"A": {"x": [1, -1], "x'": [1, 1]}, "B": {"y": [1, 1], "y'": [-1, 1]}},
      "cond_probs": {"x,y": ["1/2", "1/2"], "x,y'": [1, 0], "x',y": [0.25, 0.75], "x',y'": ["1/3", "2/3"]}})";
    const AnyModel m = parse_model(text);
    REQUIRE(std::holds_alternative<RealModel>(m));
    const auto& r = std::get<RealModel>(m);
    CHECK(r.cond.columns[3][0] == doctest::Approx(1.0 / 3.0));
    CHECK(r.settings.q[0] == 0.25);
    CHECK(validate_model(r).ok());
  }
  SUBCASE("errors") {
    try {
      parse_model("{\n  \"lambda_count\": 2,\n  oops\n}");
      FAIL("expected a parse error");
    } catch (const ModelParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() >= 1);
    }
    CHECK_THROWS_AS(parse_model(R"({"lambda_count": 1})"), ModelParseError);
    CHECK_THROWS_WITH_AS(parse_model(R"({"lambda_count": 1, "outcomes": {"A": {"x": [1], "x'": [1]},
      "B": {"y": [1], "y'": [1]}}, "cond_probs": {"x,y": ["1/0"], "x,y'": [1], "x',y": [1], "x',y'": [1]}})"),
                         doctest::Contains("cond_probs"), ModelParseError);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ModelParseError);
  }
}
