#include "chshmd/measures.hpp"

namespace chshmd {

double distinguish_probability(double distance) {
  if (!(distance >= 0.0 && distance <= 2.0)) {
    throw std::domain_error("distinguish_probability: distance must lie in [0, 2]");
  }
  return 0.5 * (1.0 + distance / 2.0);
}

}  // namespace chshmd
