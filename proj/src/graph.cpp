#include "gme/graph.hpp"

#include "gme/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace gme {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> ids)
    : n_(n), ids_(std::move(ids)), adjacency_(n) {
  if (ids_.empty()) {
    ids_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids_.push_back(std::to_string(i));
  }
  if (ids_.size() != n) throw DomainError("graph: id list size does not match node count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw DomainError("graph: duplicate node id '" + ids_[i] + "'");
  }

  std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> slot;
  for (const Edge& e : edges) {
    if (e.u >= n || e.w >= n) throw DomainError("graph: edge endpoint out of range");
    if (e.u == e.w) throw DomainError("graph: self-loop on node " + ids_[e.u]);
    if (!(e.weight > 0.0)) throw DomainError("graph: non-positive edge weight");
    const auto key = std::minmax(e.u, e.w);
    auto [it, inserted] = slot.try_emplace({key.first, key.second}, edges_.size());
    if (inserted)
      edges_.push_back({key.first, key.second, e.weight});
    else
      edges_[it->second].weight += e.weight;
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u].emplace_back(e.w, e.weight);
    adjacency_[e.w].emplace_back(e.u, e.weight);
  }
}

NodeIndex Graph::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? n_ : it->second;
}

double Graph::weight(NodeIndex u, NodeIndex w) const {
  for (const auto& [v, wt] : adjacency_.at(u))
    if (v == w) return wt;
  return 0.0;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    a(e.u, e.w) = e.weight;
    a(e.w, e.u) = e.weight;
  }
  return a;
}

Eigen::VectorXd Graph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const Edge& e : edges_) {
    d(e.u) += e.weight;
    d(e.w) += e.weight;
  }
  return d;
}

double Graph::total_weight() const { return degrees().sum(); }

bool Graph::has_isolated_nodes() const {
  return std::any_of(adjacency_.begin(), adjacency_.end(),
                     [](const auto& nbrs) { return nbrs.empty(); });
}

namespace {

[[noreturn]] void format_fail(std::size_t line_no, const std::string& what) {
  throw FormatError("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeIndex> index;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, ids.size());
    if (inserted) ids.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) format_fail(line_no, "expected '<src> <dst> [weight]'");
    if (tokens.size() > 3) format_fail(line_no, "too many fields");
    if (tokens[0] == tokens[1]) format_fail(line_no, "self-loop on '" + tokens[0] + "'");

    double weight = 1.0;
    if (tokens.size() == 3) {
      std::size_t used = 0;
      try {
        weight = std::stod(tokens[2], &used);
      } catch (const std::exception&) {
        format_fail(line_no, "weight '" + tokens[2] + "' is not a number");
      }
      if (used != tokens[2].size()) format_fail(line_no, "weight '" + tokens[2] + "' is not a number");
      if (!(weight > 0.0) || !std::isfinite(weight))
        format_fail(line_no, "weight must be positive and finite");
    }
    const NodeIndex u = intern(tokens[0]);
    const NodeIndex w = intern(tokens[1]);
    edges.push_back({u, w, weight});
  }
  if (in.bad()) throw FormatError("edge list: read error");
  const std::size_t n = ids.size();
  return Graph(n, edges, std::move(ids));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open edge list '" + path + "'");
  return load_edge_list(in);
}

void write_id_map(std::ostream& out, const Graph& g) {
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) out << g.id(u) << '\t' << u << '\n';
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = -g.adjacency();
  // diagonal set from the same weights so each row sums to exactly 0 for
  // integer weights
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    double d = 0.0;
    for (const auto& [w, wt] : g.neighbors(u)) d += wt;
    l(u, u) = d;
  }
  return l;
}

std::vector<std::size_t> connected_components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  std::size_t next = 0;
  std::queue<NodeIndex> frontier;
  for (NodeIndex s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeIndex u = frontier.front();
      frontier.pop();
      for (const auto& [w, wt] : g.neighbors(u)) {
        if (label[w] == unset) {
          label[w] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  const auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t c) { return c == 0; });
}

Subgraph largest_component(const Graph& g) {
  const auto label = connected_components(g);
  if (label.empty()) return {g, {}};
  const std::size_t count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> size(count, 0);
  for (std::size_t c : label) ++size[c];
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());

  Subgraph sub;
  std::vector<NodeIndex> remap(g.num_nodes(), g.num_nodes());
  std::vector<std::string> ids;
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    if (label[u] != best) continue;
    remap[u] = sub.original.size();
    sub.original.push_back(u);
    ids.push_back(g.id(u));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (label[e.u] == best) edges.push_back({remap[e.u], remap[e.w], e.weight});
  sub.graph = Graph(sub.original.size(), edges, std::move(ids));
  return sub;
}

}  // namespace gme
