#pragma once

#include <string>

#include "cooploc/kinematics.hpp"

namespace cooploc {

/// Reads a trajectory CSV (header `tick,vehicle_id,x_m,y_m`, ticks 0..T-1
/// contiguous and non-decreasing through the file, every tick holding each
/// vehicle id 0..N-1 exactly once). Kinematic fields of the loaded poses are
/// zero; only positions are meaningful. Malformed or incomplete files raise
/// ParseError with the offending line; unreadable paths raise IoError.
FleetTrajectory load_trajectories(const std::string& path);

/// Writes the positions of a trajectory in the same CSV format, tick-major,
/// vehicle ids ascending, 10 decimal places.
void save_trajectories(const FleetTrajectory& fleet, const std::string& path);

}  // namespace cooploc
