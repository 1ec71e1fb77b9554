#include "chshmd/constructors.hpp"

namespace chshmd {

OutcomeTable saturating_outcomes(std::size_t lambda_count, const OutcomeSigns& signs) {
  if (lambda_count != 4 && lambda_count != 5) {
    throw std::invalid_argument("saturating_outcomes: lambda_count must be 4 or 5");
  }
  // Columns: A(x), A(x'), B(y), B(y').
  const std::array<std::array<int, 4>, 5> rows = {{
      {signs.c, signs.c, signs.c, signs.c},
      {signs.d, -signs.d, signs.d, signs.d},
      {signs.e, signs.e, signs.e, -signs.e},
      {signs.f, -signs.f, -signs.f, signs.f},
      {signs.g, signs.g, signs.g, signs.g},
  }};
  OutcomeTable t(lambda_count);
  for (std::size_t i = 0; i < lambda_count; ++i) {
    t.alice[0][i] = rows[i][0];
    t.alice[1][i] = rows[i][1];
    t.bob[0][i] = rows[i][2];
    t.bob[1][i] = rows[i][3];
  }
  return t;
}

const char* region_name(InterpRegion r) {
  switch (r) {
    case InterpRegion::yellow: return "yellow";
    case InterpRegion::red: return "red";
    case InterpRegion::blue: return "blue";
  }
  return "?";
}

}  // namespace chshmd
