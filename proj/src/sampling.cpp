#include "gme/sampling.hpp"

#include "gme/errors.hpp"
#include "gme/semimetric.hpp"

#include <cmath>

namespace gme {

SampledGraph make_sampled_graph(Eigen::MatrixXd joint) {
  SampledGraph s;
  s.raw_asymmetry = (joint - joint.transpose()).cwiseAbs().maxCoeff();
  s.p = 0.5 * (joint + joint.transpose());
  s.p_start = s.p.rowwise().sum();
  s.p_end = s.p.colwise().sum().transpose();
  return s;
}

namespace {

void require_sampleable(const Graph& g) {
  if (g.num_edges() == 0) throw DomainError("sampling: graph has no edges");
  if (g.has_isolated_nodes()) throw DomainError("sampling: graph has isolated nodes");
}

}  // namespace

SampledGraph edge_sampling(const Graph& g) {
  require_sampleable(g);
  return make_sampled_graph(g.adjacency() / g.total_weight());
}

SampledGraph random_walk_sampling(const Graph& g, std::size_t path_length, WalkLengths lengths) {
  if (path_length == 0) throw DomainError("random walk sampling: path length must be >= 1");
  require_sampleable(g);
  if (!is_connected(g)) throw DomainError("random walk sampling: graph is not connected");

  const Eigen::MatrixXd a = g.adjacency();
  const Eigen::VectorXd d = g.degrees();
  const Eigen::MatrixXd transition = d.cwiseInverse().asDiagonal() * a;

  // step(t) = diag(pi) P^t, step(1) = A / 2m
  Eigen::MatrixXd step = a / d.sum();
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (std::size_t t = 1; t <= path_length; ++t) {
    if (t > 1) step = step * transition;
    if (lengths == WalkLengths::Mixture || t == path_length) joint += step;
  }
  if (lengths == WalkLengths::Mixture) joint /= static_cast<double>(path_length);
  return make_sampled_graph(std::move(joint));
}

double default_exp_theta(const SemiMetric& d) {
  const double max_d = d.matrix().maxCoeff();
  return max_d > 0.0 ? -1e-3 / max_d : 0.0;
}

SampledGraph exp_distance_sampling(const SemiMetric& d, double theta) {
  if (!std::isfinite(theta)) throw NumericalError("exp distance sampling: theta must be finite");
  const Eigen::MatrixXd& dist = d.matrix();
  if (dist.size() == 0) throw DomainError("exp distance sampling: empty metric");
  if (std::abs(theta) * dist.maxCoeff() > 700.0)
    throw NumericalError("exp distance sampling: |theta| * max d exceeds 700");
  Eigen::MatrixXd w = (theta * dist.array()).exp().matrix();
  return make_sampled_graph(w / w.sum());
}

SampledGraph exp_distance_sampling(const SemiMetric& d) {
  return exp_distance_sampling(d, default_exp_theta(d));
}

}  // namespace gme
