#include "cooploc/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace cooploc {

double true_azimuth(const Point2& observer, const Point2& target) {
  const Point2 d = target - observer;
  if (d.x() == 0.0 && d.y() == 0.0) {
    throw std::invalid_argument("true_azimuth: coincident points");
  }
  // clockwise from +y: swap the atan2 arguments
  return wrap_angle(std::atan2(d.x(), d.y()));
}

MeasurementSet measure_all(const std::vector<Point2>& truth, const GraphSnapshot& graph,
                           const NoiseParams& noise, Rng& rng) {
  if (static_cast<int>(truth.size()) != graph.n) {
    throw std::invalid_argument("measure_all: truth/graph size mismatch");
  }
  if (noise.sigma_d < 0.0 || noise.sigma_az < 0.0 || noise.sigma_x < 0.0 ||
      noise.sigma_y < 0.0) {
    throw std::invalid_argument("measure_all: negative noise sigma");
  }

  MeasurementSet out;
  out.gps.reserve(truth.size());
  for (const auto& p : truth) {
    out.gps.emplace_back(rng.gaussian(p.x(), noise.sigma_x), rng.gaussian(p.y(), noise.sigma_y));
  }
  for (const auto& [i, j] : graph.edges) {
    const double d = (truth[i] - truth[j]).norm();
    for (const auto& [a, b] : {DirectedEdge{i, j}, DirectedEdge{j, i}}) {
      const double az = true_azimuth(truth[a], truth[b]);
      out.ranges[{a, b}] = std::max(0.0, rng.gaussian(d, noise.sigma_d));
      out.azimuths[{a, b}] = wrap_angle(rng.gaussian(az, noise.sigma_az));
    }
  }
  return out;
}

DifferentialCoords differential_coords(const MeasurementSet& meas, const GraphSnapshot& graph) {
  DifferentialCoords delta;
  delta.dx = Eigen::VectorXd::Zero(graph.n);
  delta.dy = Eigen::VectorXd::Zero(graph.n);
  for (int i = 0; i < graph.n; ++i) {
    const int d_i = graph.degree(i);
    if (d_i == 0) continue;  // isolated: delta stays zero
    double sx = 0.0;
    double sy = 0.0;
    for (int j : graph.neighbors[i]) {
      const auto r = meas.ranges.find({i, j});
      const auto a = meas.azimuths.find({i, j});
      if (r == meas.ranges.end() || a == meas.azimuths.end()) {
        throw std::invalid_argument("differential_coords: edge without measurement");
      }
      sx += -r->second * std::sin(a->second);
      sy += -r->second * std::cos(a->second);
    }
    delta.dx(i) = sx / d_i;
    delta.dy(i) = sy / d_i;
  }
  return delta;
}

}  // namespace cooploc
