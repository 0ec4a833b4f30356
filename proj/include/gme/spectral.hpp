#pragma once

#include "gme/eigen_solver.hpp"
#include "gme/modularity.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gme {

enum class EmbeddingMode {
  /// orthonormal columns, H^T H = I
  Spectral,
  /// nonnegative rows summing to one
  Stochastic,
};

/// n x K embedding; row u is the vector of node u.
struct Embedding {
  Eigen::MatrixXd h;
  EmbeddingMode mode{EmbeddingMode::Spectral};

  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(h.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(h.cols()); }
};

/// Embedding dimension at the largest gap lambda_k - lambda_{k+1},
/// 1 <= k < min(k_max, values.size()), among indices with lambda_k > 0.
/// Ties go to the smaller k; with no positive eigenvalue the result is 1.
/// Throws DomainError for fewer than two values.
std::size_t select_dimension(std::span<const double> values, std::size_t k_max);

/// Top-K eigenvectors of Q as columns. Propagates eigensolver errors.
Embedding spectral_embedding(const ModularityMatrix& q, std::size_t k, const EigenOptions& options = {});
/// Same, reusing an eigendecomposition with at least K pairs.
Embedding spectral_embedding(const EigenPairs& pairs, std::size_t k);

/// tr(H^T Q H).
double trace_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h);

/// sum_u sum_w q(u,w) ||h_u - h_w||^2, evaluated pair by pair.
double weighted_distance_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h);

/// ||Q - H H^T||_F^2, evaluated entry by entry.
double frobenius_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h);

/// Q' = H H^T. Throws DomainError for a stochastic-mode embedding.
Eigen::MatrixXd reconstruct(const Embedding& e);

/// `k\tlambda` header and one row per eigenvalue, k from 1.
void write_spectrum_tsv(std::ostream& out, std::span<const double> values);

/// Header `node\tdim_1..dim_K`, then one row per node, 17 significant digits.
void write_embedding_tsv(std::ostream& out, const Eigen::MatrixXd& h, const std::vector<std::string>& ids);

}  // namespace gme
