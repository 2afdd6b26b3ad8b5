#pragma once

#include <cstdint>
#include <vector>

#include "cooploc/geometry.hpp"

namespace cooploc {

/// Ground-truth state of one vehicle at one tick. Heading is measured from
/// the +x axis, counter-clockwise, stored in [0, 2*pi).
struct VehiclePose {
  double x = 0.0;         // m
  double y = 0.0;         // m
  double heading = 0.0;   // rad
  double speed = 0.0;     // m/s, >= 0
  double yaw_rate = 0.0;  // rad/s

  Point2 position() const { return {x, y}; }
};

/// Below this yaw rate the constant-turn step switches to its straight-line
/// limit. Chosen so the switch displaces the position by at most
/// s * w * dt^2 / 2 <= 7.5e-7 m for s <= 30 m/s, dt <= 1 s.
inline constexpr double kYawRateEpsilon = 5e-8;

/// Advances a pose by one constant-turn-rate-and-velocity step.
///
/// For |yaw_rate| >= kYawRateEpsilon:
///   x' = x - (s/w) sin(h) + (s/w) sin(h + w dt)
///   y' = y + (s/w) cos(h) - (s/w) cos(h + w dt)
///   h' = h + w dt
/// otherwise the straight-line limit x' = x + s dt cos(h),
/// y' = y + s dt sin(h), h' = h.
///
/// Throws std::invalid_argument on non-finite input or dt <= 0.
VehiclePose step_ctrv(const VehiclePose& pose, double dt);

/// Fleet generation parameters. Heading, speed and yaw rate are drawn once
/// per fleet (vehicles in a convoy share them, which keeps the formation
/// rigid, the connectivity graph stable and the motion correlated across
/// vehicles); placement jitter is drawn per vehicle.
struct FleetConfig {
  int n = 20;
  int ticks = 500;
  double dt = 1.0;  // s

  // convoy grid placement
  double spacing_min = 10.0;  // m
  double spacing_max = 15.0;
  double placement_jitter = 1.0;  // m, uniform in [-j, j] per vehicle/axis

  double speed_min = 8.0;  // m/s
  double speed_max = 14.0;
  double yaw_min = -0.05;  // rad/s
  double yaw_max = 0.05;
  double heading_min = 0.0;  // rad
  double heading_max = kTwoPi;
};

/// T x N grid of poses, tick-major.
struct FleetTrajectory {
  int n = 0;
  int ticks = 0;
  double dt = 1.0;
  std::vector<VehiclePose> poses;

  VehiclePose& at(int tick, int vehicle) { return poses[static_cast<std::size_t>(tick) * n + vehicle]; }
  const VehiclePose& at(int tick, int vehicle) const {
    return poses[static_cast<std::size_t>(tick) * n + vehicle];
  }
  std::vector<Point2> positions_at(int tick) const;
};

/// Generates a fleet trajectory; deterministic for a fixed seed.
/// Throws std::invalid_argument on out-of-range config values.
FleetTrajectory generate_fleet(const FleetConfig& config, std::uint64_t seed);

}  // namespace cooploc
