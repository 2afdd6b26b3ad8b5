#include "cooploc/gr_cl.hpp"

#include <stdexcept>

#include "cooploc/numerics.hpp"

namespace cooploc {

AnchoredSystem assemble_system(const DifferentialCoords& delta, const GraphSnapshot& graph,
                               const std::vector<Anchor>& anchors, double anchor_weight) {
  if (anchors.empty()) throw std::invalid_argument("assemble_system: anchors required");
  if (delta.dx.size() != graph.n || delta.dy.size() != graph.n) {
    throw std::invalid_argument("assemble_system: delta/graph size mismatch");
  }
  if (!(anchor_weight > 0.0)) {
    throw std::invalid_argument("assemble_system: anchor weight must be positive");
  }

  std::vector<int> ids;
  ids.reserve(anchors.size());
  for (const auto& a : anchors) ids.push_back(a.id);
  AnchoredLaplacian ext = extend_with_anchors(graph, ids);

  const int n = graph.n;
  const int alpha = static_cast<int>(anchors.size());
  AnchoredSystem sys;
  sys.lhs = std::move(ext.extended);
  sys.bx = Eigen::VectorXd::Zero(n + alpha);
  sys.by = Eigen::VectorXd::Zero(n + alpha);
  for (int i = 0; i < n; ++i) {
    // degree-scaled differential coordinates; zero rows for isolated vehicles
    sys.bx(i) = graph.degree(i) * delta.dx(i);
    sys.by(i) = graph.degree(i) * delta.dy(i);
  }
  for (int m = 0; m < alpha; ++m) {
    sys.bx(n + m) = anchor_weight * anchors[m].position.x();
    sys.by(n + m) = anchor_weight * anchors[m].position.y();
    if (anchor_weight != 1.0) sys.lhs.row(n + m) *= anchor_weight;
  }
  return sys;
}

PositionEstimate solve_gr_cl(const AnchoredSystem& system) {
  const int n = static_cast<int>(system.lhs.cols());
  Eigen::MatrixXd rhs(system.lhs.rows(), 2);
  rhs.col(0) = system.bx;
  rhs.col(1) = system.by;
  const Eigen::MatrixXd sol = least_squares(system.lhs, rhs);

  PositionEstimate est;
  est.x = sol.col(0);
  est.y = sol.col(1);
  est.source.assign(static_cast<std::size_t>(n), PositionEstimate::Source::kSolved);
  return est;
}

PositionEstimate localize_tick(const MeasurementSet& meas, const GraphSnapshot& graph,
                               const std::vector<int>& anchor_ids, double anchor_weight) {
  const int n = graph.n;
  if (static_cast<int>(meas.gps.size()) != n) {
    throw std::invalid_argument("localize_tick: gps/graph size mismatch");
  }
  std::vector<bool> is_anchor(static_cast<std::size_t>(n), anchor_ids.empty());
  for (int id : anchor_ids) {
    if (id < 0 || id >= n) throw std::invalid_argument("localize_tick: anchor id out of range");
    is_anchor[id] = true;
  }

  const DifferentialCoords delta = differential_coords(meas, graph);

  PositionEstimate est;
  est.x = Eigen::VectorXd::Zero(n);
  est.y = Eigen::VectorXd::Zero(n);
  est.source.assign(static_cast<std::size_t>(n), PositionEstimate::Source::kGpsFallback);

  for (const auto& comp : connected_components(graph)) {
    std::vector<Anchor> comp_anchors;
    for (int v : comp) {
      if (is_anchor[v]) comp_anchors.push_back({v, meas.gps[v]});
    }
    if (comp.size() < 2 || comp_anchors.empty()) {
      // isolated vehicle or unanchored cluster: raw GPS
      for (int v : comp) {
        est.x(v) = meas.gps[v].x();
        est.y(v) = meas.gps[v].y();
      }
      continue;
    }

    const GraphSnapshot sub = induced_subgraph(graph, comp);
    DifferentialCoords sub_delta;
    sub_delta.dx = Eigen::VectorXd(sub.n);
    sub_delta.dy = Eigen::VectorXd(sub.n);
    for (int k = 0; k < sub.n; ++k) {
      sub_delta.dx(k) = delta.dx(comp[k]);
      sub_delta.dy(k) = delta.dy(comp[k]);
    }
    std::vector<Anchor> sub_anchors;
    for (const auto& a : comp_anchors) {
      const auto it = std::lower_bound(comp.begin(), comp.end(), a.id);
      sub_anchors.push_back({static_cast<int>(it - comp.begin()), a.position});
    }

    const AnchoredSystem sys = assemble_system(sub_delta, sub, sub_anchors, anchor_weight);
    const PositionEstimate sub_est = solve_gr_cl(sys);
    for (int k = 0; k < sub.n; ++k) {
      est.x(comp[k]) = sub_est.x(k);
      est.y(comp[k]) = sub_est.y(k);
      est.source[comp[k]] = PositionEstimate::Source::kSolved;
    }
  }
  return est;
}

}  // namespace cooploc
