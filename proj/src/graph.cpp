#include "cooploc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace cooploc {

Eigen::MatrixXd GraphSnapshot::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : edges) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd GraphSnapshot::degree_matrix() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = degree(i);
  return d;
}

Eigen::MatrixXd GraphSnapshot::laplacian() const {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : edges) {
    l(i, i) += 1.0;
    l(j, j) += 1.0;
    l(i, j) -= 1.0;
    l(j, i) -= 1.0;
  }
  return l;
}

GraphSnapshot make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1) throw std::invalid_argument("make_graph: n must be >= 1");
  for (auto& [i, j] : edges) {
    if (i == j) throw std::invalid_argument("make_graph: self loop");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw std::invalid_argument("make_graph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("make_graph: duplicate edge");
  }

  GraphSnapshot g;
  g.n = n;
  g.edges = std::move(edges);
  g.neighbors.assign(static_cast<std::size_t>(n), {});
  g.degree = Eigen::VectorXi::Zero(n);
  for (const auto& [i, j] : g.edges) {
    g.neighbors[i].push_back(j);
    g.neighbors[j].push_back(i);
    g.degree(i) += 1;
    g.degree(j) += 1;
  }
  for (auto& adj : g.neighbors) std::sort(adj.begin(), adj.end());
  return g;
}

GraphSnapshot build_connectivity(const std::vector<Point2>& positions, double radius,
                                 int max_degree) {
  const int n = static_cast<int>(positions.size());
  if (n < 1) throw std::invalid_argument("build_connectivity: need at least one vehicle");
  if (!(radius > 0.0)) throw std::invalid_argument("build_connectivity: radius must be positive");
  if (max_degree < 1) throw std::invalid_argument("build_connectivity: max_degree must be >= 1");
  for (const auto& p : positions) {
    if (!p.allFinite()) throw std::invalid_argument("build_connectivity: non-finite coordinates");
  }

  // candidates strictly inside the radius, admitted shortest first
  std::vector<std::tuple<double, int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = (positions[i] - positions[j]).norm();
      if (d < radius) candidates.emplace_back(d, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [d, i, j] : candidates) {
    if (deg[i] < max_degree && deg[j] < max_degree) {
      edges.emplace_back(i, j);
      ++deg[i];
      ++deg[j];
    }
  }
  return make_graph(n, std::move(edges));
}

AnchoredLaplacian extend_with_anchors(const GraphSnapshot& graph,
                                      const std::vector<int>& anchor_ids) {
  if (anchor_ids.empty()) {
    throw std::invalid_argument("extend_with_anchors: at least one anchor required");
  }
  std::vector<bool> seen(static_cast<std::size_t>(graph.n), false);
  for (int id : anchor_ids) {
    if (id < 0 || id >= graph.n) {
      throw std::invalid_argument("extend_with_anchors: anchor id out of range");
    }
    if (seen[id]) throw std::invalid_argument("extend_with_anchors: duplicate anchor id");
    seen[id] = true;
  }

  const int alpha = static_cast<int>(anchor_ids.size());
  AnchoredLaplacian out;
  out.n = graph.n;
  out.anchor_ids = anchor_ids;
  out.extended = Eigen::MatrixXd::Zero(graph.n + alpha, graph.n);
  out.extended.topRows(graph.n) = graph.laplacian();
  for (int m = 0; m < alpha; ++m) {
    out.extended(graph.n + m, anchor_ids[m]) = 1.0;
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const GraphSnapshot& graph) {
  std::vector<std::vector<int>> components;
  std::vector<bool> visited(static_cast<std::size_t>(graph.n), false);
  std::vector<int> stack;
  for (int start = 0; start < graph.n; ++start) {
    if (visited[start]) continue;
    std::vector<int> comp;
    stack.push_back(start);
    visited[start] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u : graph.neighbors[v]) {
        if (!visited[u]) {
          visited[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

GraphSnapshot induced_subgraph(const GraphSnapshot& graph, const std::vector<int>& vertices) {
  std::vector<int> local(static_cast<std::size_t>(graph.n), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const int v = vertices[k];
    if (v < 0 || v >= graph.n) throw std::invalid_argument("induced_subgraph: vertex out of range");
    if (local[v] != -1) throw std::invalid_argument("induced_subgraph: duplicate vertex");
    local[v] = static_cast<int>(k);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [i, j] : graph.edges) {
    if (local[i] != -1 && local[j] != -1) edges.emplace_back(local[i], local[j]);
  }
  return make_graph(static_cast<int>(vertices.size()), std::move(edges));
}

}  // namespace cooploc
