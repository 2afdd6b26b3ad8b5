#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace cooploc {

using Point2 = Eigen::Vector2d;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative can round back up to 2*pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

}  // namespace cooploc
