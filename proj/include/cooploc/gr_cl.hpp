#pragma once

#include <vector>

#include <Eigen/Core>

#include "cooploc/graph.hpp"
#include "cooploc/sensing.hpp"

namespace cooploc {

/// A vertex with a known (noisy) absolute position.
struct Anchor {
  int id = 0;
  Point2 position{0.0, 0.0};
};

/// The anchored linear system for one tick: lhs is the extended Laplacian,
/// b rows 0..n-1 hold the degree-scaled differential coordinates d_i * delta_i
/// (zero for isolated vehicles), the remaining rows hold anchor coordinates in
/// anchor order.
struct AnchoredSystem {
  Eigen::MatrixXd lhs;
  Eigen::VectorXd bx;
  Eigen::VectorXd by;
};

/// Per-tick position estimate. Vehicles in components that could not be
/// solved (no anchors, or no neighbours) carry the gps-fallback flag.
struct PositionEstimate {
  enum class Source { kSolved, kGpsFallback };

  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::vector<Source> source;
};

/// Stacks the anchored Laplacian over the measurement right-hand sides.
/// anchor_weight scales the anchor rows on both sides (1 = unweighted, the
/// default stacking). Throws std::invalid_argument on bad anchors.
AnchoredSystem assemble_system(const DifferentialCoords& delta, const GraphSnapshot& graph,
                               const std::vector<Anchor>& anchors, double anchor_weight = 1.0);

/// Least-squares solve of the two decoupled coordinate systems. Every vehicle
/// is flagged solved; rank deficiency propagates as NumericalError.
PositionEstimate solve_gr_cl(const AnchoredSystem& system);

/// One tick of graph-regularized localization: solves each connected
/// component with at least two vehicles and at least one anchor; vehicles in
/// singleton or anchor-less components fall back to their raw GPS position.
/// Anchor values are the noisy GPS positions of `anchor_ids` (empty list =
/// every vehicle).
PositionEstimate localize_tick(const MeasurementSet& meas, const GraphSnapshot& graph,
                               const std::vector<int>& anchor_ids = {},
                               double anchor_weight = 1.0);

}  // namespace cooploc
