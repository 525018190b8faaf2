#include "augkit/core/rng.hpp"

#include <cmath>

namespace augkit {

double Rng::gaussian(double mean, double stddev) {
  // u1 in (0, 1] so the log is finite; u2 in [0, 1).
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

}  // namespace augkit
