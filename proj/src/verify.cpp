#include "chshmd/verify.hpp"

#include "chshmd/constructors.hpp"
#include "chshmd/golden.hpp"
#include "chshmd/info.hpp"
#include "chshmd/measures.hpp"
#include "chshmd/oracle.hpp"
#include "chshmd/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <random>

namespace chshmd {

ConstructorSet ConstructorSet::library() {
  return {[](const Rational& m1, const Rational& m2) { return two_param_model(m1, m2); },
          [](const ModelParams<Rational>& p) { return four_param_model(p); }};
}

std::string CriterionResult::line() const {
  char head[128];
  std::snprintf(head, sizeof head, "[%s] %2d %-34s checks=%zu failures=%zu (%.2fs)", passed ? "PASS" : "FAIL", id,
                name.c_str(), checks, failures, seconds);
  return detail.empty() ? std::string(head) : std::string(head) + ": " + detail;
}

bool VerifyReport::passed() const {
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

namespace {

// Counts checks; keeps the first failure message. Thread safe.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    std::lock_guard<std::mutex> lock(mu_);
    ++checks_;
    if (!ok) {
      if (failures_ == 0) first_ = what;
      ++failures_;
    }
  }
  template <class Fn>
  void check_lazy(bool ok, Fn&& describe) {
    check(ok, ok ? std::string() : describe());
  }
  void fill(CriterionResult& r, const std::string& summary) const {
    r.checks = checks_;
    r.failures = failures_;
    r.passed = failures_ == 0;
    r.detail = failures_ == 0 ? summary : first_;
  }

 private:
  std::mutex mu_;
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

std::string fmt(double v) { return detail::format_double(v); }

std::string tuple_text(std::initializer_list<Rational> vals) {
  std::string s = "(";
  for (const auto& v : vals) s += (s.size() > 1 ? ", " : "") + to_string(v);
  return s + ")";
}

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

std::string near_text(const std::string& what, double got, double want, double tol) {
  return what + " = " + fmt(got) + ", expected " + fmt(want) + " +/- " + fmt(tol);
}

// k/den for k = 0, stride, ..., count.
std::vector<Rational> rational_grid(long den, long count, long stride = 1) {
  std::vector<Rational> g;
  for (long k = 0; k <= count; k += stride) g.emplace_back(Rational(k, den));
  return g;
}

// Grids shared by criteria 2-4.
std::vector<std::pair<Rational, Rational>> two_param_points(VerifyLevel level) {
  const auto g = level == VerifyLevel::full ? rational_grid(5, 10) : rational_grid(5, 10, 2);
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& a : g) {
    for (const auto& b : g) pts.emplace_back(a, b);
  }
  return pts;
}

std::vector<ModelParams<Rational>> four_param_points(VerifyLevel level) {
  const auto g = level == VerifyLevel::full ? rational_grid(5, 10, 2) : rational_grid(1, 2);
  std::vector<ModelParams<Rational>> pts;
  for (const auto& a : g) {
    for (const auto& b : g) {
      for (const auto& c : g) {
        for (const auto& d : g) {
          ModelParams<Rational> p{a, b, c, d};
          if (check_param_feasible(p).feasible) pts.push_back(p);
        }
      }
    }
  }
  return pts;
}

std::string params_text(const ModelParams<Rational>& p) { return tuple_text({p.M1, p.M2, p.mhat1(), p.mhat2()}); }

// Builds a model, turning exceptions into a failure message.
template <class Fn>
std::optional<ExactModel> try_build(Fn&& fn, std::string& error) {
  try {
    ExactModel m = fn();
    ValidationReport rep = validate_model(m);
    if (!rep.ok()) {
      error = "invalid model: " + rep.summary();
      return std::nullopt;
    }
    return m;
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

void criterion_tsirelson(Tally& t, const VerifyOptions& o) {
  const double target = 2.0 * std::sqrt(2.0);
  const double third = kTsirelsonViolation / 3.0;
  const double s = chsh_s(two_param_model(third, third));
  t.check(near(s, target, 1e-12), near_text("S(two-param(V_T/3, V_T/3))", s, target, 1e-12));

  // Rational proxy: r = p/q a convergent of sqrt 2, M = 2(r - 1)/3, so S must be 2r exactly.
  Rational p(1), q(1);
  while (q < Rational(1000000000000000000LL)) {
    Rational np = p + 2 * q;
    q = p + q;
    p = np;
  }
  const Rational r = p / q;
  const Rational m = Rational(2) * (r - 1) / 3;
  const Rational exact = chsh_s(o.constructors.two_param(m, m));
  t.check(exact == 2 * r, "rational proxy: S = " + to_string(exact) + " differs from 2r");
  t.check(near(to_double(exact), target, 1e-12), near_text("rational proxy S", to_double(exact), target, 1e-12));

  for (const auto& k : rational_grid(15, 30)) {
    const Rational sk = chsh_s(o.constructors.two_param(k, k));
    t.check(sk == bound_two_param(k, k),
            "S(two-param(" + to_string(k) + ", " + to_string(k) + ")) = " + to_string(sk) + " not on the bound");
  }
}

void criterion_two_tightness(Tally& t, const VerifyOptions& o) {
  const auto pts = two_param_points(o.level);
  parallel_for(pts.size(), o.jobs, [&](std::size_t i) {
    const auto& [m1, m2] = pts[i];
    const std::string at = tuple_text({m1, m2});
    const Rational bound = bound_two_param(m1, m2);
    const OracleResult r = max_s_two_param(m1, m2);
    t.check(r.s_max == bound, "oracle at " + at + ": " + to_string(r.s_max) + " != bound " + to_string(bound));
    const ValidationReport rep = validate_model(r.witness);
    t.check(rep.ok(), "oracle witness at " + at + " invalid: " + rep.summary());
    if (rep.ok()) {
      const auto d = measurement_dependence(r.witness);
      t.check(d.M1 <= m1 && d.M2 <= m2, "oracle witness at " + at + " breaks its distance bounds");
      t.check(chsh_combination(r.witness) == r.s_max, "oracle witness at " + at + " does not attain the optimum");
    }
    std::string err;
    auto built = try_build([&] { return o.constructors.two_param(m1, m2); }, err);
    t.check(built.has_value(), "two-param model at " + at + ": " + err);
    if (built) {
      const Rational s = chsh_s(*built);
      t.check(s == bound, "two-param model at " + at + ": S = " + to_string(s) + " != bound " + to_string(bound));
    }
  });
}

void criterion_four_tightness(Tally& t, const VerifyOptions& o) {
  const auto pts = four_param_points(o.level);
  parallel_for(pts.size(), o.jobs, [&](std::size_t i) {
    const auto& p = pts[i];
    const std::string at = params_text(p);
    const Rational bound = bound_four_param(p);
    const OracleResult r = max_s_four_param(p);
    t.check(r.s_max == bound, "oracle at " + at + ": " + to_string(r.s_max) + " != bound " + to_string(bound));
    const ValidationReport rep = validate_model(r.witness);
    t.check(rep.ok(), "oracle witness at " + at + " invalid: " + rep.summary());
    if (rep.ok()) {
      const auto d = measurement_dependence(r.witness);
      t.check(d.M1 <= p.M1 && d.M2 <= p.M2 && d.Mhat1 <= p.mhat1() && d.Mhat2 <= p.mhat2(),
              "oracle witness at " + at + " breaks its distance bounds");
    }
    std::string err;
    auto built = try_build([&] { return o.constructors.four_param(p); }, err);
    t.check(built.has_value(), "four-param model at " + at + ": " + err);
    if (built) {
      const Rational s = chsh_s(*built);
      t.check(s == bound, "four-param model at " + at + ": S = " + to_string(s) + " != bound " + to_string(bound));
    }
  });
}

void criterion_round_trip(Tally& t, const VerifyOptions& o) {
  for (const auto& [m1, m2] : two_param_points(o.level)) {
    const std::string at = tuple_text({m1, m2});
    std::string err;
    auto built = try_build([&] { return o.constructors.two_param(m1, m2); }, err);
    t.check(built.has_value(), "two-param model at " + at + ": " + err);
    if (!built) continue;
    const auto d = measurement_dependence(*built);
    t.check_lazy(d.M1 == m1 && d.M2 == m2 && d.Mhat1 == m1 && d.Mhat2 == m2, [&] {
      return "two-param model at " + at + " measures " + tuple_text({d.M1, d.M2, d.Mhat1, d.Mhat2});
    });
    t.check(check_inequality_chain(d), "two-param model at " + at + " breaks max{M1,M2} <= M <= min{M1+M2,2}");
  }
  for (const auto& p : four_param_points(o.level)) {
    const std::string at = params_text(p);
    std::string err;
    auto built = try_build([&] { return o.constructors.four_param(p); }, err);
    t.check(built.has_value(), "four-param model at " + at + ": " + err);
    if (!built) continue;
    const auto d = measurement_dependence(*built);
    t.check_lazy(d.M1 == p.M1 && d.M2 == p.M2 && d.Mhat1 == p.mhat1() && d.Mhat2 == p.mhat2(), [&] {
      return "four-param model at " + at + " measures " + tuple_text({d.M1, d.M2, d.Mhat1, d.Mhat2});
    });
    t.check(check_inequality_chain(d), "four-param model at " + at + " breaks max{M1,M2} <= M <= min{M1+M2,2}");
  }
}

void criterion_info_values(Tally& t, const VerifyOptions&) {
  const double vt = kTsirelsonViolation;
  const double ig = mutual_information(two_param_model(vt / 3, vt / 3));
  t.check(near(ig, 0.0462738, 1e-6), near_text("I(two-param(V_T/3, V_T/3))", ig, 0.0462738, 1e-6));
  const double ih = i_hall(vt);
  t.check(near(ih, 0.17192, 5e-4), near_text("I_H(V_T)", ih, 0.17192, 5e-4));
  const double ib = mutual_information(banik_model(std::sqrt(2.0) - 1.0));
  t.check(near(ib, 0.2466, 5e-4), near_text("I(banik(sqrt2 - 1))", ib, 0.2466, 5e-4));
  const double i40 = i_four(0.0);
  const double ig_min = i_g_min(vt).I;
  t.check(near(i40, ig_min, 1e-9), near_text("I_4(0)", i40, ig_min, 1e-9));
  const double i4t = i_four(vt / 3);
  t.check(near(i4t, 0.1423, 5e-4), near_text("I_4(V_T/3)", i4t, 0.1423, 5e-4));
}

void criterion_interp_min(Tally& t, const VerifyOptions&) {
  const double vt = kTsirelsonViolation;
  const InfoCurvePoint p = i_interp_min(vt);
  const double m2 = p.argmin_M2.value_or(-1.0);
  t.check(near(m2, 0.2063, 5e-4), near_text("argmin M2", m2, 0.2063, 5e-4));
  t.check(near(vt - 2 * m2, 0.4158, 1e-3), near_text("argmin M1", vt - 2 * m2, 0.4158, 1e-3));
  t.check(near(p.I, 0.1616, 5e-4), near_text("min I_I(V_T)", p.I, 0.1616, 5e-4));
}

void criterion_ordering(Tally& t, const VerifyOptions& o) {
  std::vector<double> vs;
  for (int k = 1; k <= 39; ++k) vs.push_back(0.05 * k);
  std::vector<std::array<double, 4>> vals(vs.size());
  parallel_for(vs.size(), o.jobs, [&](std::size_t i) {
    vals[i] = {i_g_min(vs[i]).I, i_hall(vs[i]), i_banik(vs[i]), i_interp_min(vs[i]).I};
  });
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& [g, h, b, in] = vals[i];
    t.check(g < h && h < b, "V = " + fmt(vs[i]) + ": I_G_min, I_H, I_B = " + fmt(g) + ", " + fmt(h) + ", " + fmt(b));
    t.check(in < h, "V = " + fmt(vs[i]) + ": I_I_min = " + fmt(in) + " not below I_H = " + fmt(h));
  }
}

void criterion_closed_forms(Tally& t, const VerifyOptions& o, std::string& summary) {
  const double step = o.level == VerifyLevel::full ? 0.05 : 0.1;
  const int n = static_cast<int>(std::lround(2.0 / step));
  constexpr double tol = 1e-9;
  auto agree = [&](const std::string& what, double closed, double direct) {
    t.check_lazy(near(closed, direct, tol), [&] { return what + ": closed form " + fmt(closed) + " vs direct " + fmt(direct); });
  };

  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double m1 = a * step, m2 = b * step;
      if (m1 + 2 * m2 > 2 + 1e-12) continue;
      const std::string at = "(" + fmt(m1) + ", " + fmt(m2) + ")";
      agree("I_G at " + at, i_g(m1, m2), mutual_information(two_param_model(m1, m2)));
      agree("I_I at " + at, i_interp(m1, m2), mutual_information(interp_model(m1, m2)));
    }
  }
  double printed_gap = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double V = k * step;
    const std::string at = "V = " + fmt(V);
    // Numerical minimum of I_G along M1 + 2 M2 = V against the closed-form minimum.
    const ScalarMinimum num = minimize_scalar([V](double m2) { return i_g(V - 2 * m2, std::min(m2, V / 3)); }, 0.0, V / 3);
    agree("I_G_min at " + at, i_g_min(V).I, num.value);
    agree("I_H at " + at, i_hall(V), mutual_information(hall_model(V / 6)));
    const double direct_b = mutual_information(banik_model(V / 2));
    agree("I_B at " + at, i_banik_closed_form(V), direct_b);
    printed_gap = std::max(printed_gap, std::fabs(0.25 * (6 + 2 * entropy_term(2 - V) - entropy_term(4 - V)) - direct_b));
  }
  const double zmax = kTsirelsonViolation / 3;
  for (double z = 0.0;; z += step / 2) {
    const double zz = std::min(z, zmax);
    agree("I_4 at z = " + fmt(zz), i_four(zz), mutual_information(four_param_model(i_four_params(zz))));
    if (zz == zmax) break;
  }
  summary = "I_B closed form holds with coefficient 1 on h(2-V); the coefficient-2 variant misses by up to " +
            fmt(printed_gap) + " bits";
}

// Random 4-valued model: random outcome signs and random integer weights.
// Odd draws blend a saturating four-parameter model with noise so that
// near-tight cases are exercised as well.
ExactModel random_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sign(0, 1), weight(0, 12), grid(0, 10);
  auto random_columns = [&](ExactModel& m) {
    for (auto& col : m.cond.columns) {
      std::vector<long> w(4);
      long total = 0;
      while (total == 0) {
        total = 0;
        for (auto& x : w) total += (x = weight(rng));
      }
      col.clear();
      for (long x : w) col.emplace_back(Rational(x, total));
    }
  };
  ExactModel noise;
  noise.outcomes = OutcomeTable(4);
  for (auto& row : noise.outcomes.alice) {
    for (auto& v : row) v = sign(rng) ? 1 : -1;
  }
  for (auto& row : noise.outcomes.bob) {
    for (auto& v : row) v = sign(rng) ? 1 : -1;
  }
  random_columns(noise);
  if (sign(rng) == 0) return noise;

  ModelParams<Rational> p;
  do {
    p = {Rational(grid(rng), 5), Rational(grid(rng), 5), Rational(grid(rng), 5), Rational(grid(rng), 5)};
  } while (!check_param_feasible(p).feasible);
  ExactModel sat = four_param_model(p);
  noise.outcomes = sat.outcomes;
  random_columns(noise);
  const Rational w(grid(rng), 10);
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    for (std::size_t i = 0; i < 4; ++i) sat.cond.columns[c][i] = w * sat.cond.columns[c][i] + (1 - w) * noise.cond.columns[c][i];
  }
  return sat;
}

void criterion_soundness(Tally& t, const VerifyOptions& o) {
  const std::size_t count = o.level == VerifyLevel::full ? 1000 : 100;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const ExactModel m = random_model(rng);
    const std::string at = "random model #" + std::to_string(i) + " (seed " + std::to_string(o.seed) + ")";
    const auto d = measurement_dependence(m);
    const FeasibilityVerdict f = check_param_feasible(measured_params(d));
    t.check(f.feasible, at + ": measured parameters infeasible");
    if (!f.feasible) continue;
    const Rational s = chsh_s(m), bound = bound_four_param(measured_params(d));
    t.check(s <= bound, at + ": S = " + to_string(s) + " exceeds " + to_string(bound));
    t.check(check_inequality_chain(d), at + ": breaks max{M1,M2} <= M <= min{M1+M2,2}");
  }
}

// Reference tables written out literally: symmetric model with weight p on
// three settings per lambda_1..4, and the one-sided model on lambda_3, lambda_5.
std::array<std::array<Rational, 4>, 5> reference_hall(const Rational& p) {
  const Rational z(0), r = 1 - 3 * p;
  return {{{p, p, p, z}, {p, p, z, p}, {p, z, p, p}, {z, p, p, p}, {r, r, r, r}}};
}

std::array<std::array<Rational, 4>, 5> reference_banik(const Rational& p) {
  const Rational z(0), one(1), r = 1 - p;
  return {{{z, z, z, z}, {z, z, z, z}, {z, z, p, p}, {z, z, z, z}, {one, one, r, r}}};
}

bool table_equals(const ExactModel& m, const std::array<std::array<Rational, 4>, 5>& rows) {
  if (m.lambda_count() != 5) return false;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t c = 0; c < kJointSettings; ++c) {
      if (m.cond.columns[c][i] != rows[i][c]) return false;
    }
  }
  return true;
}

void criterion_reductions(Tally& t, const VerifyOptions& o) {
  for (const auto& m : rational_grid(5, 10)) {
    t.check(bound_two_param(m, m) == bound_hall(m), "bound_two_param(M, M) != bound_hall(M) at M = " + to_string(m));
    t.check(bound_two_param(m, Rational(0)) == bound_banik(m),
            "bound_two_param(M, 0) != bound_banik(M) at M = " + to_string(m));
  }
  for (const auto& [m1, m2] : two_param_points(o.level)) {
    const std::string at = tuple_text({m1, m2});
    std::string err;
    auto four = try_build([&] { return o.constructors.four_param({m1, m2, m1, m2}); }, err);
    auto two = try_build([&] { return o.constructors.two_param(m1, m2); }, err);
    t.check(four && two && four->same_tables(*two), "four-param with Mhat = M differs from two-param at " + at);
  }
  for (long k = 0; k <= 15; ++k) {
    const Rational p(k, 45);  // [0, 1/3]
    t.check(table_equals(interp_model(Rational(2 * p), Rational(2 * p)), reference_hall(p)),
            "interp(2p, 2p) differs from the symmetric table at p = " + to_string(p));
  }
  for (long k = 0; k <= 20; ++k) {
    const Rational p(k, 20);
    t.check(table_equals(interp_model(Rational(2 * p), Rational(0)), reference_banik(p)),
            "interp(2p, 0) differs from the one-sided table at p = " + to_string(p));
  }
  // Mixture: table(p1, p2) = w hall(p1) + (1 - w) banik(p1), w = p2/p1, on the yellow region.
  for (long a = 1; a <= 20; ++a) {
    for (long b = 0; b <= a; ++b) {
      const Rational p1(a, 20), p2(b, 20);
      if (2 * p1 + 4 * p2 > 2) continue;
      const Rational w = p2 / p1;
      const auto h = reference_hall(p1), bk = reference_banik(p1);
      std::array<std::array<Rational, 4>, 5> mix;
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t c = 0; c < 4; ++c) mix[i][c] = w * h[i][c] + (1 - w) * bk[i][c];
      }
      t.check(table_equals(interp_model(Rational(2 * p1), Rational(2 * p2)), mix),
              "mixture identity fails at (p1, p2) = " + tuple_text({p1, p2}));
    }
  }
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "tsirelson-saturation";
    case 2: return "two-param-tightness";
    case 3: return "four-param-tightness";
    case 4: return "constructed-model-round-trip";
    case 5: return "mutual-information-values";
    case 6: return "interpolating-minimum";
    case 7: return "information-ordering";
    case 8: return "closed-form-vs-direct";
    case 9: return "randomized-soundness";
    case 10: return "reductions";
  }
  return "unknown";
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  Tally t;
  std::string summary;
  const auto start = std::chrono::steady_clock::now();
  if (id < 1 || id > kCriteriaCount) throw std::invalid_argument("no criterion " + std::to_string(id));
  try {
    switch (id) {
      case 1: criterion_tsirelson(t, options); break;
      case 2: criterion_two_tightness(t, options); break;
      case 3: criterion_four_tightness(t, options); break;
      case 4: criterion_round_trip(t, options); break;
      case 5: criterion_info_values(t, options); break;
      case 6: criterion_interp_min(t, options); break;
      case 7: criterion_ordering(t, options); break;
      case 8: criterion_closed_forms(t, options, summary); break;
      case 9: criterion_soundness(t, options); break;
      case 10: criterion_reductions(t, options); break;
    }
  } catch (const std::exception& e) {
    t.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.fill(r, summary);

  // Time budgets for the full grids.
  if (options.level == VerifyLevel::full) {
    const double budget = id == 2 ? 60.0 : id == 3 ? 300.0 : 0.0;
    if (budget > 0 && r.seconds > budget) {
      r.passed = false;
      r.detail = "took " + fmt(r.seconds) + " s, budget " + fmt(budget) + " s";
    }
  }
  return r;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport rep;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    rep.criteria.push_back(run_criterion(id, options));
  }
  return rep;
}

}  // namespace chshmd
