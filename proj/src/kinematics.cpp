#include "cooploc/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "cooploc/random.hpp"

namespace cooploc {

namespace {

bool pose_finite(const VehiclePose& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.heading) &&
         std::isfinite(p.speed) && std::isfinite(p.yaw_rate);
}

double sinc(double u) {
  // series below the threshold keeps full precision without dividing by u
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0 + u * u * u * u / 120.0;
  return std::sin(u) / u;
}

// stream tags for generate_fleet
constexpr std::uint64_t kFleetStream = 0x66c3e7;

}  // namespace

VehiclePose step_ctrv(const VehiclePose& pose, double dt) {
  if (!pose_finite(pose) || !std::isfinite(dt)) {
    throw std::invalid_argument("step_ctrv: non-finite input");
  }
  if (dt <= 0.0) throw std::invalid_argument("step_ctrv: dt must be positive");
  if (pose.speed < 0.0) throw std::invalid_argument("step_ctrv: negative speed");

  VehiclePose next = pose;
  const double s = pose.speed;
  const double w = pose.yaw_rate;
  const double h = pose.heading;
  if (std::abs(w) < kYawRateEpsilon) {
    next.x = pose.x + s * dt * std::cos(h);
    next.y = pose.y + s * dt * std::sin(h);
  } else {
    // half-angle form of the constant-turn displacement
    //   (s/w)(sin(h + w dt) - sin h) = s dt sinc(w dt / 2) cos(h + w dt / 2)
    // which stays accurate when s/w blows up near the branch
    const double phi = w * dt;
    const double chord = s * dt * sinc(0.5 * phi);
    next.x = pose.x + chord * std::cos(h + 0.5 * phi);
    next.y = pose.y + chord * std::sin(h + 0.5 * phi);
    next.heading = wrap_angle(h + phi);
  }
  return next;
}

std::vector<Point2> FleetTrajectory::positions_at(int tick) const {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(at(tick, i).position());
  return out;
}

FleetTrajectory generate_fleet(const FleetConfig& config, std::uint64_t seed) {
  if (config.n < 1) throw std::invalid_argument("generate_fleet: n must be >= 1");
  if (config.ticks < 1) throw std::invalid_argument("generate_fleet: ticks must be >= 1");
  if (!(config.dt > 0.0)) throw std::invalid_argument("generate_fleet: dt must be positive");
  if (config.spacing_min > config.spacing_max || config.spacing_min <= 0.0) {
    throw std::invalid_argument("generate_fleet: bad spacing range");
  }
  if (config.speed_min > config.speed_max || config.speed_min < 0.0) {
    throw std::invalid_argument("generate_fleet: bad speed range");
  }
  if (config.yaw_min > config.yaw_max) throw std::invalid_argument("generate_fleet: bad yaw range");
  if (config.heading_min > config.heading_max) {
    throw std::invalid_argument("generate_fleet: bad heading range");
  }
  if (config.placement_jitter < 0.0) {
    throw std::invalid_argument("generate_fleet: negative placement jitter");
  }

  Rng rng(Rng::mix(seed, kFleetStream));
  // fleet-common draws first, then per-vehicle jitter (fixed order)
  const double heading = wrap_angle(rng.uniform(config.heading_min, config.heading_max));
  const double speed = rng.uniform(config.speed_min, config.speed_max);
  const double yaw = rng.uniform(config.yaw_min, config.yaw_max);
  const double lane_spacing = rng.uniform(config.spacing_min, config.spacing_max);
  const double row_spacing = rng.uniform(config.spacing_min, config.spacing_max);

  const int lanes = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(config.n))));
  const Point2 forward{std::cos(heading), std::sin(heading)};
  const Point2 left{-std::sin(heading), std::cos(heading)};

  FleetTrajectory fleet;
  fleet.n = config.n;
  fleet.ticks = config.ticks;
  fleet.dt = config.dt;
  fleet.poses.resize(static_cast<std::size_t>(config.n) * config.ticks);

  const double j = config.placement_jitter;
  for (int v = 0; v < config.n; ++v) {
    const int row = v / lanes;
    const int lane = v % lanes;
    const double along = row * row_spacing + rng.uniform(-j, j);
    const double across = lane * lane_spacing + rng.uniform(-j, j);
    const Point2 p = forward * along + left * across;
    fleet.at(0, v) = VehiclePose{p.x(), p.y(), heading, speed, yaw};
  }
  for (int k = 1; k < config.ticks; ++k) {
    for (int v = 0; v < config.n; ++v) {
      fleet.at(k, v) = step_ctrv(fleet.at(k - 1, v), config.dt);
    }
  }
  return fleet;
}

}  // namespace cooploc
