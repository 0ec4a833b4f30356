#pragma once

#include "gme/sampling.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <vector>

namespace gme {

/// Symmetric covariance matrix q(u,w) = p(u,w) - p_start(u) p_end(w).
/// Rows and columns sum to zero.
class ModularityMatrix {
public:
  ModularityMatrix() = default;
  /// Wraps an existing matrix. Throws DomainError if it is not square or
  /// not symmetric within 1e-12 (scaled by its largest entry).
  explicit ModularityMatrix(Eigen::MatrixXd q);

  const Eigen::MatrixXd& matrix() const noexcept { return q_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  double operator()(std::size_t u, std::size_t w) const { return q_(u, w); }

  /// Copy with q(u,u) = 0, the input form of the softmax iteration.
  ModularityMatrix zero_diagonal() const;
  /// Copy divided by max |q| (unchanged for the zero matrix).
  ModularityMatrix normalized() const;

private:
  Eigen::MatrixXd q_;
};

ModularityMatrix modularity_matrix(const SampledGraph& s);

/// Cluster index per node. Cluster indices must be dense: every index in
/// 0..K-1 has at least one member.
class Partition {
public:
  Partition() = default;
  /// Throws DomainError if some index in 0..max is unused.
  explicit Partition(std::vector<std::size_t> assignment);

  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t num_clusters() const noexcept { return clusters_; }
  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t operator[](std::size_t u) const { return assignment_[u]; }

  std::vector<std::vector<std::size_t>> members() const;
  /// n x K 0/1 indicator matrix.
  Eigen::MatrixXd indicator() const;

private:
  std::vector<std::size_t> assignment_;
  std::size_t clusters_{0};
};

/// q(S1,S2) = sum over u in S1, w in S2 of q(u,w).
/// Throws DomainError on out-of-range node indices.
double set_covariance(const ModularityMatrix& q, std::span<const std::size_t> s1,
                      std::span<const std::size_t> s2);

/// A set is a community when q(S,S) >= 0.
bool is_community(const ModularityMatrix& q, std::span<const std::size_t> s);

/// sum_k q(S_k, S_k).
double partition_modularity(const ModularityMatrix& q, const Partition& p);

/// sum_k q(S_k, S_k) / |S_k|.
double normalized_modularity(const ModularityMatrix& q, const Partition& p);

/// Tab-separated rows, 17 significant digits.
void write_matrix_tsv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace gme
