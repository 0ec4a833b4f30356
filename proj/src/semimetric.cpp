#include "gme/semimetric.hpp"

#include "gme/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gme {

namespace {

double entry_scale(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw DomainError(std::string(what) + ": matrix must be square");
  if (!m.allFinite()) throw DomainError(std::string(what) + ": entries must be finite");
}

}  // namespace

SemiMetric::SemiMetric(Eigen::MatrixXd d) : d_(std::move(d)) {
  require_square(d_, "semi-metric");
  const double tol = 1e-12 * entry_scale(d_);
  if (d_.size() != 0 && d_.minCoeff() < -tol) throw DomainError("semi-metric: (D1) nonnegativity violated");
  if (d_.size() != 0 && d_.diagonal().cwiseAbs().maxCoeff() > tol)
    throw DomainError("semi-metric: (D2) null condition violated");
  if (d_.size() != 0 && (d_ - d_.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("semi-metric: (D3) symmetry violated");
}

CohesionMatrix::CohesionMatrix(Eigen::MatrixXd gamma) : gamma_(std::move(gamma)) {
  require_square(gamma_, "cohesion");
  if (gamma_.size() == 0) return;
  const double scale = entry_scale(gamma_);
  if ((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("cohesion: (C1) symmetry violated");
  if (gamma_.rowwise().sum().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DomainError("cohesion: (C2) zero row sums violated");
  const Eigen::Index n = gamma_.rows();
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index w = u + 1; w < n; ++w)
      if (gamma_(u, u) + gamma_(w, w) < 2.0 * gamma_(u, w) - 1e-12 * scale)
        throw DomainError("cohesion: (C3) diagonal dominance violated");
}

CohesionMatrix induce_cohesion(const SemiMetric& d) {
  const Eigen::MatrixXd& dist = d.matrix();
  const Eigen::Index n = dist.rows();
  if (n == 0) return CohesionMatrix(Eigen::MatrixXd());
  const Eigen::VectorXd row_mean = dist.rowwise().mean();
  const Eigen::RowVectorXd col_mean = dist.colwise().mean();
  const double grand = row_mean.mean();
  Eigen::MatrixXd gamma(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index w = 0; w < n; ++w) gamma(u, w) = col_mean(w) + row_mean(u) - grand - dist(u, w);
  gamma = 0.5 * (gamma + gamma.transpose()).eval();
  return CohesionMatrix(std::move(gamma));
}

SemiMetric induce_metric(const CohesionMatrix& gamma) {
  const Eigen::MatrixXd& g = gamma.matrix();
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index w = 0; w < n; ++w) d(u, w) = u == w ? 0.0 : 0.5 * (g(u, u) + g(w, w)) - g(u, w);
  d = 0.5 * (d + d.transpose()).eval();
  // (C3) only holds up to rounding; clip the resulting -eps distances
  d = d.cwiseMax(0.0);
  return SemiMetric(std::move(d));
}

namespace {

struct LaplacianSpectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

LaplacianSpectrum connected_laplacian_spectrum(const Graph& g, const char* what) {
  if (g.num_nodes() == 0) throw DomainError(std::string(what) + ": empty graph");
  if (!is_connected(g)) throw DomainError(std::string(what) + ": graph is not connected");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  if (solver.info() != Eigen::Success) throw NumericalError(std::string(what) + ": eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

CohesionMatrix laplacian_pinv(const Graph& g) {
  const auto spectrum = connected_laplacian_spectrum(g, "laplacian_pinv");
  const Eigen::Index n = spectrum.values.size();
  const double cutoff = 1e-10 * spectrum.values(n - 1);
  Eigen::VectorXd inverse = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (spectrum.values(i) > cutoff) inverse(i) = 1.0 / spectrum.values(i);
  Eigen::MatrixXd pinv = spectrum.vectors * inverse.asDiagonal() * spectrum.vectors.transpose();
  pinv = 0.5 * (pinv + pinv.transpose()).eval();
  // remove the rounding-level component along the constant vector
  const Eigen::VectorXd row_mean = pinv.rowwise().mean();
  const double grand = row_mean.mean();
  pinv = (pinv.colwise() - row_mean).rowwise() - row_mean.transpose();
  pinv.array() += grand;
  return CohesionMatrix(std::move(pinv));
}

SemiMetric resistance_distance(const Graph& g) {
  const Eigen::MatrixXd gamma = laplacian_pinv(g).matrix();
  const Eigen::Index n = gamma.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index w = 0; w < n; ++w) d(u, w) = u == w ? 0.0 : gamma(u, u) + gamma(w, w) - 2.0 * gamma(u, w);
  d = (0.5 * (d + d.transpose())).cwiseMax(0.0);
  return SemiMetric(std::move(d));
}

Embedding eigenmap_embedding(const Graph& g, std::size_t k) {
  if (k < 1 || k + 1 > g.num_nodes()) throw DomainError("eigenmap_embedding: K must be in 1..n-1");
  const auto spectrum = connected_laplacian_spectrum(g, "eigenmap_embedding");
  Eigen::MatrixXd h = spectrum.vectors.middleCols(1, static_cast<Eigen::Index>(k));
  canonicalize_signs(h);
  return {std::move(h), EmbeddingMode::Spectral};
}

SemiMetric half_sq_euclidean(const DataMatrix& x) {
  const Eigen::Index n = x.x.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    d(u, u) = 0.0;
    for (Eigen::Index w = u + 1; w < n; ++w) d(u, w) = d(w, u) = 0.5 * (x.x.row(u) - x.x.row(w)).squaredNorm();
  }
  return SemiMetric(std::move(d));
}

PcaResult pca_embedding(const DataMatrix& x, std::size_t k, EigenOptions options) {
  const auto n = static_cast<std::size_t>(x.x.rows());
  const auto p = static_cast<std::size_t>(x.x.cols());
  if (k < 1 || k > std::min(n, p)) throw DomainError("pca_embedding: K must be in 1..min(n, p)");
  if (!x.x.allFinite()) throw DomainError("pca_embedding: data must be finite");

  const Eigen::MatrixXd centered = x.centered();
  Eigen::MatrixXd gram = centered * centered.transpose();
  gram = 0.5 * (gram + gram.transpose()).eval();

  const EigenPairs pairs = top_k_eigen(gram, k, options);
  const double scale = std::max(1.0, gram.cwiseAbs().rowwise().sum().maxCoeff());
  if (pairs.values.minCoeff() < -1e-10 * scale)
    throw NumericalError("pca_embedding: Gram matrix has a negative eigenvalue");

  PcaResult out;
  out.embedding = {pairs.vectors, EmbeddingMode::Spectral};
  out.values = pairs.values;
  out.scales = pairs.values.cwiseMax(0.0).cwiseSqrt();
  return out;
}

}  // namespace gme
