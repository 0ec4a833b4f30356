#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace gme {

/// Algebraically largest eigenpairs, values descending. Each vector's first
/// component with magnitude above 1e-12 is positive.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // n x K, orthonormal columns
  /// max_k ||M v_k - lambda_k v_k||_2
  double max_residual{0.0};
  /// block matrix products spent
  std::size_t iterations{0};

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

struct EigenOptions {
  /// Converged when every residual is <= tol * max(1, ||M||_inf).
  double tol{1e-10};
  /// Budget of block matrix products.
  std::size_t max_iterations{10000};
  /// Seed of the random starting block.
  std::uint64_t seed{0x5eed};
  /// Polynomial degree of the Chebyshev filter applied between
  /// Rayleigh-Ritz steps.
  int filter_degree{10};
};

/// K algebraically largest eigenpairs of a symmetric matrix.
///
/// Block power iteration: a block of p > K vectors is repeatedly passed
/// through a Chebyshev polynomial in M that damps the spectrum below the
/// current p-th Ritz value, then re-orthonormalized and rotated by a
/// Rayleigh-Ritz step. When p would cover the whole space the Rayleigh-Ritz
/// step alone is exact.
///
/// Throws DomainError if M is not square and symmetric within 1e-12 or K is
/// outside 1..n, NumericalError (with the residual) if the budget runs out.
EigenPairs top_k_eigen(const Eigen::MatrixXd& m, std::size_t k, const EigenOptions& options = {});

/// Flips each column so its first component above 1e-12 in magnitude is
/// positive.
void canonicalize_signs(Eigen::MatrixXd& vectors);

}  // namespace gme
