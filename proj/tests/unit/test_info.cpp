#include "chshmd/golden.hpp"
#include "chshmd/info.hpp"
#include "chshmd/measures.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace chshmd;

namespace {

const double kVT = 2.0 * (std::sqrt(2.0) - 1.0);

// Independent oracle: H(lambda) - sum_uv q(u,v) H(lambda|u,v), in bits.
double info_by_entropies(const RealModel& m) {
  auto H = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) {
      if (x > 0) h -= x * std::log2(x);
    }
    return h;
  };
  std::vector<double> pl(m.lambda_count(), 0.0);
  double cond = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < pl.size(); ++i) pl[i] += m.settings.q[c] * m.cond.columns[c][i];
    cond += m.settings.q[c] * H(m.cond.columns[c]);
  }
  return H(pl) - cond;
}

}  // namespace

TEST_CASE("entropy_term") {
  CHECK(entropy_term(0) == 0);
  CHECK(entropy_term(1) == 0);
  CHECK(entropy_term(2) == 2);
  CHECK(entropy_term(0.5) == -0.5);
  CHECK_THROWS_AS(entropy_term(-1e-9), std::domain_error);
}

TEST_CASE("mutual_information") {
  CHECK(std::fabs(mutual_information(two_param_model(kVT / 3, kVT / 3)) - 0.0462738) < 1e-6);
  CHECK(std::fabs(mutual_information(banik_model(std::sqrt(2.0) - 1)) - 0.247) < 1e-3);

  SUBCASE("independent models carry no information") {
    testgen::Engine rng(2);
    for (int i = 0; i < 50; ++i) {
      ExactModel m = testgen::random_model(rng);
      for (auto& col : m.cond.columns) col = m.cond.columns[0];
      CHECK(mutual_information(m) == 0.0);
    }
  }
  SUBCASE("property: agrees with the entropy decomposition and is nonnegative") {
    testgen::Engine rng(9);
    for (int i = 0; i < 300; ++i) {
      const ExactModel m = i % 2 ? testgen::random_model(rng) : testgen::random_model_with_settings(rng);
      const double I = mutual_information(m);
      CHECK(I >= 0.0);
      CHECK(I == doctest::Approx(info_by_entropies(to_real(m))).epsilon(1e-12).scale(1));
      // Under uniform settings any dependence costs some information.
      if (i % 2 && measurement_dependence(m).M > 0) CHECK(I > 0.0);
    }
  }
}

TEST_CASE("two-parameter closed forms") {
  CHECK(i_g(0, 0) == 0);
  CHECK(std::fabs(i_g(kVT / 3, kVT / 3) - 0.0462738) < 1e-6);
  CHECK(i_g(0.5, 0.2) == doctest::Approx(mutual_information(two_param_model(0.5, 0.2))).epsilon(1e-12));
  CHECK_THROWS_AS(i_g(0.2, 0.5), ParameterError);
  CHECK_THROWS_AS(i_g(1.5, 0.5), ParameterError);

  const auto at_vt = i_g_min(kVT);
  CHECK(std::fabs(at_vt.I - 0.0462738) < 1e-6);
  REQUIRE(at_vt.argmin_M2.has_value());
  CHECK(*at_vt.argmin_M2 == doctest::Approx(kVT / 3));
  CHECK(i_g_min(0).I == 0);
  CHECK_THROWS_AS(i_g_min(2.5), ParameterError);

  SUBCASE("closed-form minimum matches golden-section search along M1 + 2 M2 = V") {
    for (double V : {0.3, kVT, 1.4, 2.0}) {
      const auto num = minimize_scalar([V](double m2) { return i_g(V - 2 * m2, std::min(m2, V / 3)); }, 0.0, V / 3);
      CHECK(num.value == doctest::Approx(i_g_min(V).I).epsilon(1e-10));
      CHECK(num.x == doctest::Approx(V / 3).epsilon(1e-6));
    }
    CHECK(i_g_min(2.0).I == doctest::Approx(0.75 * entropy_term(4.0 / 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("symmetric and one-sided information") {
  CHECK(i_hall(0) == 0);
  CHECK(std::fabs(i_hall(kVT) - 0.172) < 5e-4);
  CHECK(std::fabs(i_banik(kVT) - 0.247) < 5e-4);
  CHECK_THROWS_AS(i_hall(-0.1), ParameterError);
  CHECK_THROWS_AS(i_banik(2.1), ParameterError);
  for (int k = 0; k <= 40; ++k) {
    const double V = 0.05 * k;
    CHECK(i_banik(V) == doctest::Approx(mutual_information(banik_model(V / 2))).epsilon(1e-14));
    CHECK(std::fabs(i_banik_closed_form(V) - i_banik(V)) < 1e-9);
    CHECK(std::fabs(i_hall(V) - mutual_information(hall_model(V / 6))) < 1e-9);
  }
  // The variant with 2 h(2 - V) does not reproduce the direct value.
  const double doubled = 0.25 * (6 + 2 * entropy_term(2 - kVT) - entropy_term(4 - kVT));
  CHECK(std::fabs(doubled - i_banik(kVT)) > 0.05);
}

TEST_CASE("interpolating-model information") {
  for (auto [m1, m2] : std::vector<std::pair<double, double>>{{0.5, 0.2}, {0.4158, 0.2063}, {1.0, 0.3}, {2.0, 0.0}}) {
    CHECK(std::fabs(i_interp(m1, m2) - mutual_information(interp_model(m1, m2))) < 1e-9);
  }
  SUBCASE("special cases reduce to the symmetric and one-sided values") {
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 30.0;
      CHECK(std::fabs(i_interp(2 * p, 2 * p) - i_hall(6 * p)) < 1e-9);
      const double q = k / 10.0;
      CHECK(std::fabs(i_interp(2 * q, 0) - i_banik(2 * q)) < 1e-9);
    }
  }
  SUBCASE("line form") { CHECK(i_interp_v(kVT, 0.2) == i_interp(kVT - 0.4, 0.2)); }
  SUBCASE("minimum at the Tsirelson violation") {
    const auto p = i_interp_min(kVT);
    REQUIRE(p.argmin_M2.has_value());
    CHECK(std::fabs(*p.argmin_M2 - 0.2063) < 5e-4);
    CHECK(std::fabs(kVT - 2 * *p.argmin_M2 - 0.4158) < 1e-3);
    CHECK(std::fabs(p.I - 0.1616) < 5e-4);
    // The direct minimum agrees with the line form of the closed expression.
    CHECK(std::fabs(p.I - i_interp_v(kVT, *p.argmin_M2)) < 1e-9);
  }
  SUBCASE("ordering") {
    for (int k = 1; k <= 39; ++k) {
      const double V = 0.05 * k;
      CHECK(i_g_min(V).I < i_hall(V));
      CHECK(i_hall(V) < i_banik(V));
      CHECK(i_interp_min(V).I < i_hall(V));
    }
  }
  CHECK(i_interp_min(0).I == 0);
}

TEST_CASE("four-parameter information family") {
  CHECK(std::fabs(i_four(0) - i_g_min(kVT).I) < 1e-9);
  CHECK(std::fabs(i_four(kVT / 3) - 0.1423) < 5e-4);
  CHECK(i_four(0.1) < i_four(0.2));
  CHECK_THROWS_AS(i_four(-0.01), ParameterError);
  CHECK_THROWS_AS(i_four(0.3), ParameterError);
  double prev = -1;
  for (int k = 0; k <= 60; ++k) {
    const double z = std::min(k * 0.005, kVT / 3);
    const double I = i_four(z);
    CHECK(I >= prev - 1e-15);
    prev = I;
    CHECK(std::fabs(I - mutual_information(four_param_model(i_four_params(z)))) < 1e-9);
  }
}

TEST_CASE("minimize_scalar") {
  const auto a = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(a.x == doctest::Approx(0.3).epsilon(1e-8));
  const auto b = minimize_scalar([](double x) { return x; }, 0.2, 1.0);
  CHECK(b.x == 0.2);
  const auto c = minimize_scalar([](double x) { return -x; }, 0.2, 1.0);
  CHECK(c.x == 1.0);
  // Two wells: the scan picks the deeper one.
  const auto d = minimize_scalar([](double x) { return std::min((x - 0.1) * (x - 0.1) + 0.01, (x - 0.8) * (x - 0.8)); }, 0.0, 1.0);
  CHECK(d.x == doctest::Approx(0.8).epsilon(1e-8));
  CHECK_THROWS_AS(minimize_scalar([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
}
