#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cooploc/geometry.hpp"

namespace cooploc {

/// Undirected communication graph of the fleet at one tick. Edges are stored
/// with i < j in lexicographic order; adjacency lists are sorted.
struct GraphSnapshot {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> neighbors;
  Eigen::VectorXi degree;

  Eigen::MatrixXd adjacency() const;
  Eigen::MatrixXd degree_matrix() const;
  /// L = D - A.
  Eigen::MatrixXd laplacian() const;
};

struct ConnectivityParams {
  double radius = 20.0;  // m, edges strictly below this distance
  int max_degree = 6;
};

/// Builds a snapshot from an explicit edge list (i != j, vertices in range,
/// duplicates rejected). Throws std::invalid_argument on violations.
GraphSnapshot make_graph(int n, std::vector<std::pair<int, int>> edges);

/// Builds the range-limited graph: candidate edges are pairs strictly closer
/// than `radius`; the degree cap is enforced by admitting candidates in
/// ascending length order (ties broken by vertex ids) and skipping any edge
/// with a saturated endpoint. Throws std::invalid_argument on non-finite
/// coordinates, radius <= 0 or max_degree < 1.
GraphSnapshot build_connectivity(const std::vector<Point2>& positions, double radius,
                                 int max_degree);

inline GraphSnapshot build_connectivity(const std::vector<Point2>& positions,
                                        const ConnectivityParams& params) {
  return build_connectivity(positions, params.radius, params.max_degree);
}

/// Graph Laplacian stacked over one indicator row per anchor, in anchor_ids
/// order. Shape (n + alpha) x n.
struct AnchoredLaplacian {
  int n = 0;
  std::vector<int> anchor_ids;
  Eigen::MatrixXd extended;
};

/// Appends anchor indicator rows to the Laplacian. The plain Laplacian is
/// singular, so at least one anchor is required; ids must be valid and
/// distinct. Throws std::invalid_argument otherwise.
AnchoredLaplacian extend_with_anchors(const GraphSnapshot& graph,
                                      const std::vector<int>& anchor_ids);

/// Vertex partition into connected components, each sorted ascending,
/// components ordered by smallest member. Singletons are the isolated
/// vehicles that fall back to raw GPS downstream.
std::vector<std::vector<int>> connected_components(const GraphSnapshot& graph);

/// Subgraph induced by `vertices` (sorted ascending); vertex k of the result
/// is vertices[k].
GraphSnapshot induced_subgraph(const GraphSnapshot& graph, const std::vector<int>& vertices);

}  // namespace cooploc
