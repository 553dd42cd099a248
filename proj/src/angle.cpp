#include "fqkd/angle.hpp"

#include <cmath>

namespace fqkd {

EquatorAngle::EquatorAngle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π
  if (r >= kTwoPi) r = 0.0;
  value_ = r;
}

}  // namespace fqkd
