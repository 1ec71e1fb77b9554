#pragma once

#include "chshmd/model.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace chshmd {

/// Malformed JSON or a document that does not follow the model schema.
/// line/column are 1-based and 0 when unknown (schema errors).
class ModelParseError : public std::runtime_error {
 public:
  ModelParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

using AnyModel = std::variant<ExactModel, RealModel>;

/// A model is loaded exactly when every probability entry (conditional and
/// settings) is an integer or a rational string such as "3/8"; one floating
/// number anywhere makes the whole model floating point. The model is not
/// validated here.
AnyModel parse_model(const std::string& text);
AnyModel load_model(const std::string& path);

/// Stable key order; rationals are written as strings, doubles at round-trip precision.
std::string model_to_json(const ExactModel& model, int indent = 2);
std::string model_to_json(const RealModel& model, int indent = 2);

}  // namespace chshmd
