#include "gme/eigen_solver.hpp"

#include "gme/errors.hpp"
#include "gme/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gme {

void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double x = vectors(i, j);
      if (std::abs(x) > 1e-12) {
        if (x < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
}

namespace {

struct RitzState {
  Eigen::MatrixXd basis;   // n x p, orthonormal, ordered by descending Ritz value
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd image;   // M * basis
};

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& block) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
  return qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
}

RitzState rayleigh_ritz(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd image = m * basis;
  Eigen::MatrixXd projected = basis.transpose() * image;
  projected = 0.5 * (projected + projected.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
  // ascending -> descending
  Eigen::MatrixXd rotation = small.eigenvectors().rowwise().reverse();
  RitzState s;
  s.values = small.eigenvalues().reverse();
  s.basis = basis * rotation;
  s.image = image * rotation;
  return s;
}

double max_residual(const RitzState& s, Eigen::Index k) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < k; ++j)
    worst = std::max(worst, (s.image.col(j) - s.values(j) * s.basis.col(j)).norm());
  return worst;
}

/// T_degree((M - center I) / half_width) * block, three-term recurrence.
Eigen::MatrixXd chebyshev_filter(const Eigen::MatrixXd& m, const Eigen::MatrixXd& block, int degree,
                                 double center, double half_width) {
  Eigen::MatrixXd prev = block;
  Eigen::MatrixXd cur = (m * block - center * block) / half_width;
  for (int j = 2; j <= degree; ++j) {
    Eigen::MatrixXd next = 2.0 * (m * cur - center * cur) / half_width - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Lower bound on the smallest eigenvalue from a short Lanczos run:
/// smallest Ritz value minus the norm of the last off-diagonal coefficient,
/// clamped to the Gershgorin bound.
double lanczos_lower_bound(const Eigen::MatrixXd& m, double gershgorin, Rng& rng) {
  const Eigen::Index n = m.rows();
  const Eigen::Index steps = std::min<Eigen::Index>(n, 30);
  Eigen::MatrixXd basis(n, steps);
  Eigen::VectorXd alpha(steps), beta(steps);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  v.normalize();
  Eigen::Index used = 0;
  double last_beta = 0.0;
  for (Eigen::Index j = 0; j < steps; ++j) {
    basis.col(j) = v;
    Eigen::VectorXd w = m * v;
    alpha(j) = v.dot(w);
    // full reorthogonalization keeps the short run stable
    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    used = j + 1;
    last_beta = w.norm();
    if (last_beta <= 1e-14 * gershgorin) break;
    beta(j) = last_beta;
    v = w / last_beta;
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(used, used);
  for (Eigen::Index j = 0; j < used; ++j) {
    tri(j, j) = alpha(j);
    if (j + 1 < used) tri(j, j + 1) = tri(j + 1, j) = beta(j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri, Eigen::EigenvaluesOnly);
  const double estimate = small.eigenvalues()(0) - last_beta;
  return std::max(estimate, -gershgorin);
}

EigenPairs finish(RitzState s, Eigen::Index k, std::size_t iterations) {
  EigenPairs out;
  out.values = s.values.head(k);
  out.vectors = s.basis.leftCols(k);
  canonicalize_signs(out.vectors);
  out.max_residual = max_residual(s, k);
  out.iterations = iterations;
  return out;
}

}  // namespace

EigenPairs top_k_eigen(const Eigen::MatrixXd& m, std::size_t k, const EigenOptions& options) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DomainError("top_k_eigen: matrix must be square");
  if (k < 1 || static_cast<Eigen::Index>(k) > n) throw DomainError("top_k_eigen: K must be in 1..n");
  const double norm_inf = m.cwiseAbs().rowwise().sum().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, norm_inf))
    throw DomainError("top_k_eigen: matrix must be symmetric");

  const auto kk = static_cast<Eigen::Index>(k);
  if (norm_inf == 0.0) {
    EigenPairs zero;
    zero.values = Eigen::VectorXd::Zero(kk);
    zero.vectors = Eigen::MatrixXd::Identity(n, kk);
    return zero;
  }

  const Eigen::Index p = std::min<Eigen::Index>(n, kk + std::max<Eigen::Index>(kk, 8));
  if (p == n) return finish(rayleigh_ritz(m, Eigen::MatrixXd::Identity(n, n)), kk, 1);

  Rng rng(options.seed);
  Eigen::MatrixXd start(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) start(i, j) = rng.uniform(-1.0, 1.0);

  const double target = options.tol * std::max(1.0, norm_inf);
  const double lower = lanczos_lower_bound(m, norm_inf, rng);
  const int degree = std::max(1, options.filter_degree);

  RitzState state = rayleigh_ritz(m, orthonormalize(start));
  std::size_t used = 1;
  double residual = max_residual(state, kk);
  while (residual > target) {
    if (used + static_cast<std::size_t>(degree) + 1 > options.max_iterations) {
      std::ostringstream msg;
      msg << "top_k_eigen: no convergence after " << used << " block products (residual " << residual
          << ", target " << target << ")";
      throw NumericalError(msg.str());
    }
    // damp everything below the smallest Ritz value of the block
    const double cutoff = std::max(state.values(p - 1), lower);
    const double half_width = std::max(0.5 * (cutoff - lower), 1e-6 * norm_inf);
    const double center = lower + half_width;
    const Eigen::MatrixXd filtered = chebyshev_filter(m, state.basis, degree, center, half_width);
    state = rayleigh_ritz(m, orthonormalize(filtered));
    used += static_cast<std::size_t>(degree) + 1;
    residual = max_residual(state, kk);
  }
  return finish(std::move(state), kk, used);
}

}  // namespace gme
