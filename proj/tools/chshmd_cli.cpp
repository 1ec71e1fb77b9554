// chshmd: evaluate, construct and verify measurement-dependent CHSH models.

#include "chshmd/constructors.hpp"
#include "chshmd/info.hpp"
#include "chshmd/measures.hpp"
#include "chshmd/model_io.hpp"
#include "chshmd/oracle.hpp"
#include "chshmd/sweep.hpp"
#include "chshmd/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace chshmd;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kInfeasible = 3 };

// Single-line, prefix-parseable error report.
struct CliError {
  int code;
  std::string reason;
  std::string message;
};

[[noreturn]] void fail(int code, std::string reason, std::string message) {
  throw CliError{code, std::move(reason), std::move(message)};
}

// A numeric flag: exact when written as an integer, decimal or p/q; VT, VT/n
// and sqrt2-1 give floating values.
struct Param {
  std::string text;
  std::optional<Rational> exact;
  double value = 0.0;
};

Param parse_param(const std::string& flag, const std::string& text) {
  Param p{text, std::nullopt, 0.0};
  if (looks_rational(text)) {
    p.exact = parse_rational(text);
    p.value = to_double(*p.exact);
    return p;
  }
  if (text == "VT") {
    p.value = kTsirelsonViolation;
  } else if (text.rfind("VT/", 0) == 0 && looks_rational(text.substr(3)) && parse_rational(text.substr(3)) != 0) {
    p.value = kTsirelsonViolation / to_double(parse_rational(text.substr(3)));
  } else if (text == "sqrt2-1") {
    p.value = std::sqrt(2.0) - 1.0;
  } else {
    fail(kUsage, "usage", "--" + flag + ": cannot parse '" + text + "' (expected a decimal, p/q, VT, VT/n or sqrt2-1)");
  }
  return p;
}

struct Flags {
  std::optional<std::string> m1, m2, mhat1, mhat2, p;
  std::string out;
  std::string format = "csv";
  std::string figure;
  std::string family;
  std::string level = "quick";
  std::string model_path;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  bool witness = false;
};

Param require_param(const std::optional<std::string>& v, const std::string& flag) {
  if (!v) fail(kUsage, "usage", "missing --" + flag);
  return parse_param(flag, *v);
}

std::optional<Param> optional_param(const std::optional<std::string>& v, const std::string& flag) {
  if (!v) return std::nullopt;
  return parse_param(flag, *v);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(kUsage, "io", "cannot write " + out_path);
  out << text;
}

std::string dec(double v) { return detail::format_double(v); }

template <class T>
std::string num_text(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v) + " (" + dec(to_double(v)) + ")";
  } else {
    return dec(v);
  }
}

// ---------------------------------------------------------------------------
// eval

template <class T>
void print_eval(const HiddenVariableModel<T>& m, std::ostream& os) {
  const ValidationReport rep = validate_model(m);
  if (!rep.ok()) fail(kFailure, "invalid-model", rep.summary());

  os << "label: " << (m.label.empty() ? "(none)" : m.label) << "\n";
  os << "lambda_count: " << m.lambda_count() << "\n";
  os << "arithmetic: " << (is_exact_v<T> ? "exact" : "floating") << "\n";
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    os << "E[" << kJointSettingNames[c] << "]: " << num_text(correlation(m, JointSetting::from_index(c))) << "\n";
  }
  const T s = chsh_s(m);
  os << "S: " << num_text(s) << "\n";

  const auto d = measurement_dependence(m);
  os << "M1: " << num_text(d.M1) << "\n";
  os << "M2: " << num_text(d.M2) << "\n";
  os << "M: " << num_text(d.M) << "\n";
  os << "Mhat1: " << num_text(d.Mhat1) << "\n";
  os << "Mhat2: " << num_text(d.Mhat2) << "\n";
  os << "M1[y]: " << num_text(d.M1_given[0]) << "\n";
  os << "M1[y']: " << num_text(d.M1_given[1]) << "\n";
  os << "M2[x]: " << num_text(d.M2_given[0]) << "\n";
  os << "M2[x']: " << num_text(d.M2_given[1]) << "\n";
  os << "F: " << num_text(d.F) << "\n";
  os << "F1: " << num_text(d.F1) << "\n";
  os << "F2: " << num_text(d.F2) << "\n";
  os << "mutual_information_bits: " << dec(mutual_information(m)) << "\n";

  const T b2 = bound_two_param(d.M1, d.M2);
  const T b4 = bound_four_param(measured_params(d));
  os << "bound_two_param: " << num_text(b2) << "\n";
  os << "bound_four_param: " << num_text(b4) << "\n";
  os << "saturates two-param bound: " << (approx_equal(s, b2) ? "yes" : "no") << "\n";
  os << "saturates four-param bound: " << (approx_equal(s, b4) ? "yes" : "no") << "\n";
}

int cmd_eval(const Flags& f) {
  AnyModel model;
  try {
    model = load_model(f.model_path);
  } catch (const ModelParseError& e) {
    fail(kUsage, "parse", e.what());
  }
  std::ostringstream os;
  std::visit([&](const auto& m) { print_eval(m, os); }, model);
  emit(os.str(), f.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// construct

template <class T>
T param_as(const Param& p) {
  if constexpr (is_exact_v<T>) {
    return *p.exact;
  } else {
    return p.value;
  }
}

template <class T>
std::string build_family(const std::string& family, const std::vector<Param>& ps) {
  auto a = [&](std::size_t i) { return param_as<T>(ps[i]); };
  if (family == "two-param") return model_to_json(two_param_model(a(0), a(1)));
  if (family == "four-param") return model_to_json(four_param_model(ModelParams<T>{a(0), a(1), a(2), a(3)}));
  if (family == "interp") return model_to_json(interp_model(a(0), a(1)));
  if (family == "hall") return model_to_json(hall_model(a(0)));
  if (family == "banik") return model_to_json(banik_model(a(0)));
  fail(kUsage, "usage", "unknown family '" + family + "'");
}

int cmd_construct(const Flags& f) {
  std::vector<Param> ps;
  if (f.family == "two-param" || f.family == "interp") {
    ps = {require_param(f.m1, "m1"), require_param(f.m2, "m2")};
  } else if (f.family == "four-param") {
    Param m1 = require_param(f.m1, "m1"), m2 = require_param(f.m2, "m2");
    ps = {m1, m2, optional_param(f.mhat1, "mhat1").value_or(m1), optional_param(f.mhat2, "mhat2").value_or(m2)};
  } else {
    ps = {require_param(f.p, "p")};
  }
  bool exact = true;
  for (const auto& p : ps) exact = exact && p.exact.has_value();
  emit(exact ? build_family<Rational>(f.family, ps) : build_family<double>(f.family, ps), f.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const Flags& f) {
  if (f.figure.empty()) fail(kUsage, "usage", "missing --figure");
  SweepGrid grid;
  try {
    grid = figure_sweep(f.figure, f.jobs);
  } catch (const std::invalid_argument& e) {
    fail(kUsage, "usage", e.what());
  }
  std::ostringstream os;
  write_grid(grid, f.format == "json" ? SweepFormat::json : SweepFormat::csv, os);
  emit(os.str(), f.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// oracle

Rational require_exact(const Param& p, const std::string& flag) {
  if (!p.exact) {
    fail(kUsage, "usage", "--" + flag + " = '" + p.text + "' is not rational; the oracle needs exact input such as 2/5 or 0.4");
  }
  return *p.exact;
}

int cmd_oracle(const Flags& f) {
  const Rational m1 = require_exact(require_param(f.m1, "m1"), "m1");
  const Rational m2 = require_exact(require_param(f.m2, "m2"), "m2");
  const bool four = f.mhat1 || f.mhat2;
  OracleResult r;
  Rational bound;
  if (four) {
    ModelParams<Rational> p{m1, m2, std::nullopt, std::nullopt};
    if (f.mhat1) p.Mhat1 = require_exact(parse_param("mhat1", *f.mhat1), "mhat1");
    if (f.mhat2) p.Mhat2 = require_exact(parse_param("mhat2", *f.mhat2), "mhat2");
    r = max_s_four_param(p);
    bound = bound_four_param(p);
  } else {
    r = max_s_two_param(m1, m2);
    bound = bound_two_param(m1, m2);
  }
  std::ostringstream os;
  os << "problem: " << (four ? "four-param" : "two-param") << "\n";
  os << "s_max: " << to_string(r.s_max) << "\n";
  os << "s_max_decimal: " << dec(to_double(r.s_max)) << "\n";
  os << "bound: " << to_string(bound) << "\n";
  os << "tight: " << (r.s_max == bound ? "yes" : "no") << "\n";
  for (const auto& b : r.branches) os << "attaining branch: " << b.name() << "\n";
  if (f.witness) {
    r.witness.label = "oracle witness M1=" + to_string(m1) + " M2=" + to_string(m2);
    os << "witness:\n" << model_to_json(r.witness);
  }
  emit(os.str(), f.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Flags& f) {
  VerifyOptions o;
  o.level = f.level == "full" ? VerifyLevel::full : VerifyLevel::quick;
  o.seed = f.seed;
  o.jobs = f.jobs;
  std::size_t passed = 0, total = 0;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    const CriterionResult r = run_criterion(id, o);
    std::cout << r.line() << std::endl;
    ++total;
    if (r.passed) ++passed;
  }
  std::cout << "summary: " << passed << "/" << total << " criteria passed (" << f.level << ", seed " << f.seed << ")"
            << std::endl;
  return passed == total ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-dependent Bell-CHSH models: evaluate, construct, sweep, oracle, verify"};
  app.require_subcommand(1);
  Flags f;

  auto add_params = [&f](CLI::App* sub) {
    sub->add_option("--m1", f.m1, "M1 (decimal, p/q, VT, VT/n)");
    sub->add_option("--m2", f.m2, "M2");
    sub->add_option("--mhat1", f.mhat1, "Mhat1 (defaults to M1)");
    sub->add_option("--mhat2", f.mhat2, "Mhat2 (defaults to M2)");
  };

  auto* eval = app.add_subcommand("eval", "Report S, dependence measures, information and bounds for a model file");
  eval->add_option("model", f.model_path, "Model JSON file")->required();
  eval->add_option("--out", f.out, "Write the report here instead of stdout");

  auto* construct = app.add_subcommand("construct", "Write a saturating model as JSON");
  construct->add_option("family", f.family, "two-param | four-param | interp | hall | banik")
      ->required()
      ->check(CLI::IsMember({"two-param", "four-param", "interp", "hall", "banik"}));
  add_params(construct);
  construct->add_option("--p", f.p, "Parameter of the hall/banik families");
  construct->add_option("--out", f.out, "Output file");

  auto* sweep = app.add_subcommand("sweep", "Emit figure data");
  sweep->add_option("--figure", f.figure, "fig1 | fig2 | fig3 | fig4 | fig7 | fig8 | fig8-slice")->required();
  sweep->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", f.out, "Output file");
  sweep->add_option("--jobs", f.jobs, "Worker threads (0 = all cores)");

  auto* oracle = app.add_subcommand("oracle", "Exact LP maximum of S under the given constraints");
  add_params(oracle);
  oracle->add_flag("--witness", f.witness, "Also print the optimal model");
  oracle->add_option("--out", f.out, "Output file");

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("level", f.level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", f.seed, "Seed for randomized checks");
  verify->add_option("--jobs", f.jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    std::cerr << "error: usage: " << msg << "\n";
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(f);
    if (*construct) return cmd_construct(f);
    if (*sweep) return cmd_sweep(f);
    if (*oracle) return cmd_oracle(f);
    if (*verify) return cmd_verify(f);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.reason << ": " << e.message << "\n";
    return e.code;
  } catch (const InfeasibleParams& e) {
    std::cerr << "error: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParameterError& e) {
    std::cerr << "error: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid-model: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
