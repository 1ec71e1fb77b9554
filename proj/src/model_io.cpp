#include "chshmd/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace chshmd {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ModelParseError::ModelParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? what + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                                  : what),
      line_(line),
      column_(column) {}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ModelParseError("schema error at " + path + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, "missing key \"" + key + "\"");
  return *it;
}

bool is_exact_entry(const json& v) { return v.is_string() || v.is_number_integer() || v.is_number_unsigned(); }

template <class T>
T entry_value(const json& v, const std::string& path) {
  if (v.is_string()) {
    Rational r;
    try {
      r = parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      schema_error(path, e.what());
    }
    if constexpr (is_exact_v<T>) {
      return r;
    } else {
      return to_double(r);
    }
  }
  if (v.is_number_integer() || v.is_number_unsigned()) return T(v.get<long long>());
  if (v.is_number_float()) {
    if constexpr (is_exact_v<T>) {
      schema_error(path, "floating number in an exact model");
    } else {
      return v.get<double>();
    }
  }
  schema_error(path, "expected a number or a \"p/q\" string");
}

std::vector<int> sign_list(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of +1/-1");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) schema_error(path + "[" + std::to_string(i) + "]", "expected +1 or -1");
    // Range is checked by validate_model so the report names the entry.
    out.push_back(v[i].get<int>());
  }
  return out;
}

template <class T>
HiddenVariableModel<T> build(const json& doc) {
  HiddenVariableModel<T> m;
  const json& n = member(doc, "lambda_count", "$");
  if (!n.is_number_integer() || n.get<long long>() < 0) schema_error("$.lambda_count", "expected a nonnegative integer");
  m.outcomes.lambda_count = n.get<std::size_t>();

  const json& outcomes = member(doc, "outcomes", "$");
  const json& A = member(outcomes, "A", "$.outcomes");
  const json& B = member(outcomes, "B", "$.outcomes");
  for (int v = 0; v < 2; ++v) {
    m.outcomes.alice[v] = sign_list(member(A, kAliceSettingNames[v], "$.outcomes.A"),
                                    std::string("$.outcomes.A.") + kAliceSettingNames[v]);
    m.outcomes.bob[v] = sign_list(member(B, kBobSettingNames[v], "$.outcomes.B"),
                                  std::string("$.outcomes.B.") + kBobSettingNames[v]);
  }

  const json& cond = member(doc, "cond_probs", "$");
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    const std::string path = std::string("$.cond_probs[\"") + kJointSettingNames[c] + "\"]";
    const json& col = member(cond, kJointSettingNames[c], "$.cond_probs");
    if (!col.is_array()) schema_error(path, "expected an array");
    for (std::size_t i = 0; i < col.size(); ++i) {
      m.cond.columns[c].push_back(entry_value<T>(col[i], path + "[" + std::to_string(i) + "]"));
    }
  }

  if (auto it = doc.find("settings"); it != doc.end()) {
    for (std::size_t c = 0; c < kJointSettings; ++c) {
      m.settings.q[c] = entry_value<T>(member(*it, kJointSettingNames[c], "$.settings"),
                                       std::string("$.settings[\"") + kJointSettingNames[c] + "\"]");
    }
  }
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) schema_error("$.label", "expected a string");
    m.label = it->get<std::string>();
  }
  return m;
}

bool document_is_exact(const json& doc) {
  bool exact = true;
  if (auto cond = doc.find("cond_probs"); cond != doc.end() && cond->is_object()) {
    for (const auto& col : *cond) {
      if (!col.is_array()) continue;
      for (const auto& v : col) exact = exact && is_exact_entry(v);
    }
  }
  if (auto s = doc.find("settings"); s != doc.end() && s->is_object()) {
    for (const auto& v : *s) exact = exact && is_exact_entry(v);
  }
  return exact;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ordered_json to_json_value(const Rational& v) { return to_string(v); }
ordered_json to_json_value(double v) { return v; }

template <class T>
std::string dump(const HiddenVariableModel<T>& m, int indent) {
  ordered_json doc;
  doc["lambda_count"] = m.outcomes.lambda_count;
  ordered_json A, B;
  for (int v = 0; v < 2; ++v) {
    A[kAliceSettingNames[v]] = m.outcomes.alice[v];
    B[kBobSettingNames[v]] = m.outcomes.bob[v];
  }
  doc["outcomes"]["A"] = A;
  doc["outcomes"]["B"] = B;
  ordered_json cond = ordered_json::object();
  ordered_json settings = ordered_json::object();
  for (std::size_t c = 0; c < kJointSettings; ++c) {
    ordered_json col = ordered_json::array();
    for (const auto& p : m.cond.columns[c]) col.push_back(to_json_value(p));
    cond[kJointSettingNames[c]] = col;
    settings[kJointSettingNames[c]] = to_json_value(m.settings.q[c]);
  }
  doc["cond_probs"] = cond;
  doc["settings"] = settings;
  doc["label"] = m.label;
  return doc.dump(indent) + "\n";
}

}  // namespace

AnyModel parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ModelParseError("malformed JSON", line, column);
  }
  if (!doc.is_object()) schema_error("$", "expected an object");
  if (document_is_exact(doc)) return build<Rational>(doc);
  return build<double>(doc);
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const ExactModel& model, int indent) { return dump(model, indent); }
std::string model_to_json(const RealModel& model, int indent) { return dump(model, indent); }

}  // namespace chshmd
