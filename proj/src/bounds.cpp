#include "chshmd/bounds.hpp"

namespace chshmd {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

InfeasibleParams::InfeasibleParams(std::vector<std::string> violated)
    : std::invalid_argument("infeasible parameters: violates " + join(violated)), violated_(std::move(violated)) {}

}  // namespace chshmd
