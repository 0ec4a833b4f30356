#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace gme {

using NodeIndex = std::size_t;

struct Edge {
  NodeIndex u{0};
  NodeIndex w{0};
  double weight{1.0};

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted simple graph over nodes 0..n-1.
///
/// Each edge is stored once with u < w. Self-loops and non-positive weights
/// are rejected; repeated (u,w) pairs, in either orientation, are summed.
/// Immutable after construction.
class Graph {
public:
  Graph() = default;

  /// Throws DomainError on out-of-range endpoints, self-loops or
  /// non-positive weights. If `ids` is empty, node i gets the ID "i".
  Graph(std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> ids = {});

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::string& id(NodeIndex u) const { return ids_.at(u); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  /// Index of an external ID, or n when unknown.
  NodeIndex index_of(const std::string& id) const;

  /// Neighbours of u with edge weights, in edge insertion order.
  const std::vector<std::pair<NodeIndex, double>>& neighbors(NodeIndex u) const {
    return adjacency_.at(u);
  }

  double weight(NodeIndex u, NodeIndex w) const;

  Eigen::MatrixXd adjacency() const;
  /// Weighted degrees d_u = sum_w A(u,w).
  Eigen::VectorXd degrees() const;
  /// Sum of all degrees (2m).
  double total_weight() const;

  bool has_isolated_nodes() const;

private:
  std::size_t n_{0};
  std::vector<Edge> edges_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<std::pair<NodeIndex, double>>> adjacency_;
};

/// Parses `<src> <dst> [weight]` lines. `#` starts a comment; blank lines
/// are skipped. Nodes are indexed in order of first appearance.
/// Throws FormatError with the offending line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// `<external_id>\t<index>` per node.
void write_id_map(std::ostream& out, const Graph& g);

/// L = D - A.
Eigen::MatrixXd laplacian(const Graph& g);

bool is_connected(const Graph& g);

/// Component label per node, components numbered in order of their
/// smallest node index.
std::vector<std::size_t> connected_components(const Graph& g);

struct Subgraph {
  Graph graph;
  /// original index of each node in `graph`
  std::vector<NodeIndex> original;
};

/// Largest connected component (ties go to the component containing the
/// smallest node index). Node order and IDs are preserved.
Subgraph largest_component(const Graph& g);

}  // namespace gme
