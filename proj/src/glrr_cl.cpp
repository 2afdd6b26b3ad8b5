#include "cooploc/glrr_cl.hpp"

#include <algorithm>
#include <stdexcept>

#include "cooploc/errors.hpp"

namespace cooploc {

std::optional<BatchWindow> build_window(const std::deque<WindowTick>& history, int tau) {
  if (tau < 1) throw std::invalid_argument("build_window: tau must be >= 1");
  if (static_cast<int>(history.size()) < tau) return std::nullopt;

  const auto first = history.size() - static_cast<std::size_t>(tau);
  const Eigen::Index n = history[first].scaled_delta_x.size();
  const Eigen::Index alpha = history[first].anchor_x.size();

  BatchWindow window;
  window.tau = tau;
  window.bx.resize(n + alpha, tau);
  window.by.resize(n + alpha, tau);
  for (int t = 0; t < tau; ++t) {
    const WindowTick& tick = history[first + t];
    if (tick.scaled_delta_x.size() != n || tick.anchor_x.size() != alpha) {
      throw std::invalid_argument("build_window: inconsistent tick shapes");
    }
    window.bx.col(t) << tick.scaled_delta_x, tick.anchor_x;
    window.by.col(t) << tick.scaled_delta_y, tick.anchor_y;
  }
  return window;
}

LowRankEstimate recover(const BatchWindow& window, const SvdFactors& factors, int rank_bound) {
  const Eigen::Index m = factors.u.rows();
  const Eigen::Index n = factors.v.rows();
  if (window.bx.rows() != m) {
    throw std::invalid_argument("recover: window rows do not match the factored system");
  }
  if (rank_bound < 1 || rank_bound > std::min<Eigen::Index>(n, window.tau)) {
    throw std::invalid_argument("recover: rank bound out of range");
  }
  const auto& sv = factors.singular_values;
  if (sv.size() < n || sv(n - 1) <= rank_tolerance(m, n, sv(0))) {
    throw NumericalError("recover: extended Laplacian is rank deficient");
  }

  // rows of U^T B beyond n correspond to zero singular values and drop out
  const Eigen::VectorXd inv_s = sv.head(n).cwiseInverse();
  LowRankEstimate est;
  est.rank_bound = rank_bound;
  est.x = factors.v * (inv_s.asDiagonal() *
                       svt_truncate((factors.u.transpose() * window.bx).topRows(n), rank_bound));
  est.y = factors.v * (inv_s.asDiagonal() *
                       svt_truncate((factors.u.transpose() * window.by).topRows(n), rank_bound));
  return est;
}

GlrrRunner::GlrrRunner(Options options) : options_(std::move(options)) {
  if (options_.tau < 1) throw std::invalid_argument("GlrrRunner: tau must be >= 1");
  if (options_.rank_bound < 1) throw std::invalid_argument("GlrrRunner: rank bound must be >= 1");
  if (!(options_.anchor_weight > 0.0)) {
    throw std::invalid_argument("GlrrRunner: anchor weight must be positive");
  }
}

void GlrrRunner::refreeze(const GraphSnapshot& graph) {
  resolved_anchor_ids_ = options_.anchor_ids;
  if (resolved_anchor_ids_.empty()) {
    resolved_anchor_ids_.resize(static_cast<std::size_t>(graph.n));
    for (int i = 0; i < graph.n; ++i) resolved_anchor_ids_[i] = i;
  }
  AnchoredLaplacian ext = extend_with_anchors(graph, resolved_anchor_ids_);
  if (options_.anchor_weight != 1.0) {
    ext.extended.bottomRows(static_cast<Eigen::Index>(resolved_anchor_ids_.size())) *=
        options_.anchor_weight;
  }
  factors_ = svd(ext.extended);
  frozen_edges_ = graph.edges;
  frozen_ = true;
  history_.clear();
  ++graph_epochs_;
}

GlrrRunner::TickEstimate GlrrRunner::step(const MeasurementSet& meas, const GraphSnapshot& graph,
                                          const PositionEstimate& per_tick) {
  if (!frozen_ || graph.edges != frozen_edges_) refreeze(graph);

  const DifferentialCoords delta = differential_coords(meas, graph);
  WindowTick tick;
  tick.scaled_delta_x = graph.degree.cast<double>().cwiseProduct(delta.dx);
  tick.scaled_delta_y = graph.degree.cast<double>().cwiseProduct(delta.dy);
  const auto alpha = static_cast<Eigen::Index>(resolved_anchor_ids_.size());
  tick.anchor_x.resize(alpha);
  tick.anchor_y.resize(alpha);
  for (Eigen::Index m = 0; m < alpha; ++m) {
    const int id = resolved_anchor_ids_[m];
    if (options_.anchor_source == WindowAnchorSource::kRawGps) {
      tick.anchor_x(m) = meas.gps[id].x();
      tick.anchor_y(m) = meas.gps[id].y();
    } else {
      tick.anchor_x(m) = per_tick.x(id);
      tick.anchor_y(m) = per_tick.y(id);
    }
  }
  if (options_.anchor_weight != 1.0) {
    tick.anchor_x *= options_.anchor_weight;
    tick.anchor_y *= options_.anchor_weight;
  }

  history_.push_back(std::move(tick));
  if (static_cast<int>(history_.size()) > options_.tau) history_.pop_front();

  const auto window = build_window(history_, options_.tau);
  if (!window) return {per_tick, true};

  const LowRankEstimate low_rank = recover(*window, factors_, options_.rank_bound);
  PositionEstimate est;
  est.x = low_rank.x.col(options_.tau - 1);
  est.y = low_rank.y.col(options_.tau - 1);
  est.source.assign(static_cast<std::size_t>(graph.n), PositionEstimate::Source::kSolved);
  return {std::move(est), false};
}

std::vector<GlrrRunner::TickEstimate> run_glrr(const FleetTrajectory& fleet,
                                               const NoiseParams& noise,
                                               const ConnectivityParams& connectivity,
                                               const GlrrRunner::Options& options,
                                               GraphMode mode, std::uint64_t seed) {
  GlrrRunner runner(options);
  Rng rng(seed);
  std::vector<GlrrRunner::TickEstimate> out;
  out.reserve(static_cast<std::size_t>(fleet.ticks));

  GraphSnapshot frozen;
  for (int k = 0; k < fleet.ticks; ++k) {
    const std::vector<Point2> positions = fleet.positions_at(k);
    if (mode == GraphMode::kDynamic || k == 0) {
      frozen = build_connectivity(positions, connectivity);
    }
    const MeasurementSet meas = measure_all(positions, frozen, noise, rng);
    const PositionEstimate per_tick =
        localize_tick(meas, frozen, options.anchor_ids, options.anchor_weight);
    out.push_back(runner.step(meas, frozen, per_tick));
  }
  return out;
}

}  // namespace cooploc
