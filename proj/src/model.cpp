#include "chshmd/model.hpp"

#include <cstdio>

namespace chshmd {

namespace detail {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.where + ": " + v.message;
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument("invalid model: " + report.summary()), report_(std::move(report)) {}

}  // namespace chshmd
