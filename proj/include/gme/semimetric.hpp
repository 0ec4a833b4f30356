#pragma once

#include "gme/eigen_solver.hpp"
#include "gme/graph.hpp"
#include "gme/spectral.hpp"

#include <Eigen/Dense>

namespace gme {

/// Pairwise distances with d >= 0, d(u,u) = 0 and d(u,w) = d(w,u), each
/// checked within 1e-12 (relative to the largest entry when it exceeds 1).
/// Triangle inequality is not required.
class SemiMetric {
public:
  SemiMetric() = default;
  /// Throws DomainError naming the first violated axiom.
  explicit SemiMetric(Eigen::MatrixXd d);

  const Eigen::MatrixXd& matrix() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_.rows()); }

private:
  Eigen::MatrixXd d_;
};

/// Symmetric similarity with zero row sums and
/// gamma(u,u) + gamma(w,w) >= 2 gamma(u,w). Need not be positive semi-definite.
class CohesionMatrix {
public:
  CohesionMatrix() = default;
  /// Throws DomainError naming the first violated axiom.
  explicit CohesionMatrix(Eigen::MatrixXd gamma);

  const Eigen::MatrixXd& matrix() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(gamma_.rows()); }

private:
  Eigen::MatrixXd gamma_;
};

/// Data points as rows.
struct DataMatrix {
  Eigen::MatrixXd x;

  Eigen::RowVectorXd centroid() const { return x.colwise().mean(); }
  Eigen::MatrixXd centered() const { return x.rowwise() - centroid(); }
};

/// gamma(u,w) = mean_v d(v,w) + mean_v d(u,v) - mean d - d(u,w), i.e. -J D J.
CohesionMatrix induce_cohesion(const SemiMetric& d);

/// d(u,w) = (gamma(u,u) + gamma(w,w)) / 2 - gamma(u,w).
SemiMetric induce_metric(const CohesionMatrix& gamma);

/// Moore-Penrose pseudo-inverse of the Laplacian of a connected graph,
/// sum over nonzero Laplacian eigenvalues beta_i of Z_i Z_i^T / beta_i.
/// Eigenvalues below 1e-10 * beta_max are treated as the null space.
/// Throws DomainError for a disconnected graph.
CohesionMatrix laplacian_pinv(const Graph& g);

/// Effective resistance d(u,v) = g(u,u) + g(v,v) - 2 g(u,v) from the
/// Laplacian pseudo-inverse g. Throws DomainError for a disconnected graph.
SemiMetric resistance_distance(const Graph& g);

/// Laplacian eigenvectors Z_2..Z_{K+1} (ascending eigenvalue) as columns.
/// Throws DomainError for a disconnected graph or K > n - 1.
Embedding eigenmap_embedding(const Graph& g, std::size_t k);

/// d(u,w) = ||x_u - x_w||^2 / 2.
SemiMetric half_sq_euclidean(const DataMatrix& x);

struct PcaResult {
  Embedding embedding;     // top-K eigenvectors of the centered Gram matrix
  Eigen::VectorXd values;  // their eigenvalues
  /// per-column sqrt(max(lambda, 0))
  Eigen::VectorXd scales;

  /// Rows scaled by `scales`: PCA scores up to per-column sign.
  Eigen::MatrixXd scores() const { return embedding.h * scales.asDiagonal(); }
};

/// Modularity embedding of the cohesion induced by the half squared
/// Euclidean distance (the centered Gram matrix).
/// Throws DomainError for K outside 1..min(n, p) or NumericalError if the
/// Gram matrix has an eigenvalue below -1e-10 * scale.
PcaResult pca_embedding(const DataMatrix& x, std::size_t k, EigenOptions options = {1e-13});

}  // namespace gme
