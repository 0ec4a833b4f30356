#pragma once

#include "gme/graph.hpp"

#include <Eigen/Dense>

#include <optional>

namespace gme {

class SemiMetric;

/// Bivariate distribution p(u,w) over ordered node pairs with its marginals.
/// Every sampler in this header produces a symmetric p, so p_start == p_end.
struct SampledGraph {
  Eigen::MatrixXd p;
  Eigen::VectorXd p_start;  // sum over w of p(u,w)
  Eigen::VectorXd p_end;    // sum over u of p(u,w)
  /// max |M - M^T| of the joint matrix before the final symmetrization.
  double raw_asymmetry{0.0};

  std::size_t size() const noexcept { return static_cast<std::size_t>(p.rows()); }
};

/// Symmetrizes `joint`, records its asymmetry and fills the marginals.
SampledGraph make_sampled_graph(Eigen::MatrixXd joint);

/// Uniform edge sampling: p(u,w) = A(u,w) / 2m.
/// Throws DomainError for an edgeless graph or one with isolated nodes.
SampledGraph edge_sampling(const Graph& g);

enum class WalkLengths {
  /// uniform mixture over walk lengths 1..L
  Mixture,
  /// walks of exactly L steps
  Exact,
};

/// Endpoints of a random walk started from the stationary distribution
/// pi(u) = d_u / 2m. With the mixture rule
///   p = (1/L) sum_{t=1..L} diag(pi) P^t,   P = D^{-1} A.
/// Throws DomainError if g is disconnected, has isolated nodes, or L == 0.
SampledGraph random_walk_sampling(const Graph& g, std::size_t path_length,
                                  WalkLengths lengths = WalkLengths::Mixture);

/// -1e-3 / max d(u,w); 0 for the all-zero metric.
double default_exp_theta(const SemiMetric& d);

/// p(u,w) proportional to exp(theta * d(u,w)).
/// Throws NumericalError when |theta| * max d > 700.
SampledGraph exp_distance_sampling(const SemiMetric& d, double theta);
SampledGraph exp_distance_sampling(const SemiMetric& d);

}  // namespace gme
