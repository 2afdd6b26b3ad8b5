#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cooploc/gr_cl.hpp"
#include "cooploc/graph.hpp"
#include "cooploc/kinematics.hpp"
#include "cooploc/numerics.hpp"
#include "cooploc/sensing.hpp"

namespace cooploc {

/// One tick of window input: degree-scaled differential coordinates (n rows)
/// and the anchor values for that tick (alpha rows, anchor order).
struct WindowTick {
  Eigen::VectorXd scaled_delta_x;
  Eigen::VectorXd scaled_delta_y;
  Eigen::VectorXd anchor_x;
  Eigen::VectorXd anchor_y;
};

/// Stacked right-hand-side matrices over a sliding window, one column per
/// tick, oldest first; (n + alpha) x tau.
struct BatchWindow {
  int tau = 0;
  Eigen::MatrixXd bx;
  Eigen::MatrixXd by;
};

/// Rank-bounded window estimate; column t is the position estimate of window
/// tick t, the last column being the current tick.
struct LowRankEstimate {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  int rank_bound = 0;
};

/// Assembles the window matrices from the last `tau` ticks of history.
/// Returns nullopt while fewer than tau ticks are buffered (warmup).
std::optional<BatchWindow> build_window(const std::deque<WindowTick>& history, int tau);

/// Solves the rank-constrained window problem
///   min ||Lt X - B||_F^2  s.t.  rank(X) <= rank_bound
/// via the precomputed full SVD of the extended Laplacian: with
/// W = (U^T B) restricted to its first n rows,
///   X = V S^{-1} trunc_s(W).
/// Requires 1 <= rank_bound <= min(n, tau); a singular value of Lt at or
/// below the rank tolerance raises NumericalError (Lt must have full column
/// rank).
LowRankEstimate recover(const BatchWindow& window, const SvdFactors& factors, int rank_bound);

/// Whether the run rebuilds connectivity every tick or keeps the tick-0
/// graph for the whole run.
enum class GraphMode { kDynamic, kStrict };

/// Where the window's anchor rows come from: the per-tick graph-regularized
/// estimates (default) or the raw GPS readings (ablation).
enum class WindowAnchorSource { kEstimate, kRawGps };

/// Sequential sliding-window estimator. Feed one tick at a time; the runner
/// freezes the graph and the SVD of its extended Laplacian on first use and
/// whenever the incoming edge set differs from the frozen one, restarting the
/// window warmup on every refreeze.
class GlrrRunner {
 public:
  struct Options {
    int tau = 10;
    int rank_bound = 3;
    std::vector<int> anchor_ids;  // empty = all vehicles
    double anchor_weight = 1.0;
    WindowAnchorSource anchor_source = WindowAnchorSource::kEstimate;
  };

  struct TickEstimate {
    PositionEstimate estimate;
    bool warmup = false;  // true while the window is filling: estimate is the per-tick one
  };

  explicit GlrrRunner(Options options);

  /// Advances one tick. `per_tick` must be the graph-regularized estimate
  /// computed on `graph` from `meas`.
  TickEstimate step(const MeasurementSet& meas, const GraphSnapshot& graph,
                    const PositionEstimate& per_tick);

  int graph_epochs() const { return graph_epochs_; }

 private:
  void refreeze(const GraphSnapshot& graph);

  Options options_;
  bool frozen_ = false;
  std::vector<std::pair<int, int>> frozen_edges_;
  std::vector<int> resolved_anchor_ids_;
  SvdFactors factors_;
  std::deque<WindowTick> history_;
  int graph_epochs_ = 0;
};

/// Runs the full windowed pipeline over a trajectory: per tick builds the
/// graph (per GraphMode), samples measurements, computes the per-tick
/// estimate and feeds the runner. Ticks before the window fills (and after
/// any graph refreeze) emit the per-tick estimate flagged warmup.
std::vector<GlrrRunner::TickEstimate> run_glrr(const FleetTrajectory& fleet,
                                               const NoiseParams& noise,
                                               const ConnectivityParams& connectivity,
                                               const GlrrRunner::Options& options,
                                               GraphMode mode, std::uint64_t seed);

}  // namespace cooploc
