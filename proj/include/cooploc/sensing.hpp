#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cooploc/geometry.hpp"
#include "cooploc/graph.hpp"
#include "cooploc/random.hpp"

namespace cooploc {

/// Measurement noise standard deviations. sigma_az is in radians. The GPS
/// covariance is diag(sigma_x^2, sigma_y^2).
struct NoiseParams {
  double sigma_d = 0.0;   // m
  double sigma_az = 0.0;  // rad
  double sigma_x = 0.0;   // m
  double sigma_y = 0.0;   // m
};

/// Ordered (observer, target) pair.
using DirectedEdge = std::pair<int, int>;

/// One tick of noisy observations: per-vehicle GPS positions plus per
/// directed edge range and azimuth. Both directions of every graph edge are
/// measured independently (each vehicle senses with its own hardware).
struct MeasurementSet {
  std::vector<Point2> gps;
  std::map<DirectedEdge, double> ranges;    // m, clamped >= 0
  std::map<DirectedEdge, double> azimuths;  // rad, in [0, 2*pi)
};

/// Per-vehicle differential coordinates (vertex minus mean of neighbours);
/// zero for isolated vertices.
struct DifferentialCoords {
  Eigen::VectorXd dx;
  Eigen::VectorXd dy;
};

/// Bearing from observer to target, measured clockwise from +y, in [0, 2*pi).
/// Satisfies x_t - x_o = d sin(az) and y_t - y_o = d cos(az), the one
/// convention under which the differential-coordinate estimator reproduces
/// vertex-minus-neighbour-mean exactly. Throws std::invalid_argument for
/// coincident points.
double true_azimuth(const Point2& observer, const Point2& target);

/// Samples one tick of measurements over the graph's edges. Draw order is
/// fixed (GPS per vehicle, then both directions of each edge in edge order),
/// so a fixed rng seed reproduces the set bitwise.
MeasurementSet measure_all(const std::vector<Point2>& truth, const GraphSnapshot& graph,
                           const NoiseParams& noise, Rng& rng);

/// Estimates differential coordinates from range/azimuth readings:
///   dx_i = (1/d_i) sum_{j in N(i)} -range_ij sin(az_ij)
///   dy_i = (1/d_i) sum_{j in N(i)} -range_ij cos(az_ij)
/// Throws std::invalid_argument if a graph edge lacks a measurement.
DifferentialCoords differential_coords(const MeasurementSet& meas, const GraphSnapshot& graph);

}  // namespace cooploc
