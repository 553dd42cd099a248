#pragma once

#include <numbers>

namespace fqkd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Azimuthal angle on the Bloch-sphere equator, kept in [0, 2π).
class EquatorAngle {
 public:
  constexpr EquatorAngle() = default;
  explicit EquatorAngle(double radians);

  double radians() const { return value_; }

  /// Antipodal angle φ + π.
  EquatorAngle bar() const { return EquatorAngle(value_ + kPi); }
  EquatorAngle rotated(double delta) const { return EquatorAngle(value_ + delta); }

  friend bool operator==(EquatorAngle a, EquatorAngle b) { return a.value_ == b.value_; }

 private:
  double value_ = 0.0;
};

}  // namespace fqkd
