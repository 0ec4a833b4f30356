#include "gme/spectral.hpp"

#include "gme/errors.hpp"
#include "gme/tsv.hpp"

#include <algorithm>
#include <ostream>

namespace gme {

std::size_t select_dimension(std::span<const double> values, std::size_t k_max) {
  if (values.size() < 2) throw DomainError("select_dimension: need at least two eigenvalues");
  const std::size_t limit = std::min(k_max, values.size());
  std::size_t best = 1;
  double best_gap = -1.0;
  bool any_positive = false;
  // k is 1-based: compares values[k-1] and values[k]
  for (std::size_t k = 1; k < limit; ++k) {
    if (!(values[k - 1] > 0.0)) continue;
    any_positive = true;
    const double gap = values[k - 1] - values[k];
    if (gap > best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return any_positive ? best : 1;
}

Embedding spectral_embedding(const EigenPairs& pairs, std::size_t k) {
  if (k < 1 || k > pairs.size()) throw DomainError("spectral_embedding: K exceeds available eigenpairs");
  return {pairs.vectors.leftCols(static_cast<Eigen::Index>(k)), EmbeddingMode::Spectral};
}

Embedding spectral_embedding(const ModularityMatrix& q, std::size_t k, const EigenOptions& options) {
  return spectral_embedding(top_k_eigen(q.matrix(), k, options), k);
}

double trace_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h) {
  if (q.rows() != h.rows() || q.cols() != h.rows()) throw DomainError("trace_objective: dimension mismatch");
  return (h.transpose() * q * h).trace();
}

double weighted_distance_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h) {
  if (q.rows() != h.rows() || q.cols() != h.rows())
    throw DomainError("weighted_distance_objective: dimension mismatch");
  double total = 0.0;
  for (Eigen::Index u = 0; u < q.rows(); ++u)
    for (Eigen::Index w = 0; w < q.cols(); ++w) total += q(u, w) * (h.row(u) - h.row(w)).squaredNorm();
  return total;
}

double frobenius_objective(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h) {
  if (q.rows() != h.rows() || q.cols() != h.rows())
    throw DomainError("frobenius_objective: dimension mismatch");
  double total = 0.0;
  for (Eigen::Index u = 0; u < q.rows(); ++u) {
    for (Eigen::Index w = 0; w < q.cols(); ++w) {
      const double diff = q(u, w) - h.row(u).dot(h.row(w));
      total += diff * diff;
    }
  }
  return total;
}

Eigen::MatrixXd reconstruct(const Embedding& e) {
  if (e.mode != EmbeddingMode::Spectral) throw DomainError("reconstruct: needs a spectral-mode embedding");
  Eigen::MatrixXd out = e.h * e.h.transpose();
  return 0.5 * (out + out.transpose());
}

void write_spectrum_tsv(std::ostream& out, std::span<const double> values) {
  out << "k\tlambda\n";
  for (std::size_t k = 0; k < values.size(); ++k) out << (k + 1) << '\t' << format_double(values[k]) << '\n';
}

void write_embedding_tsv(std::ostream& out, const Eigen::MatrixXd& h, const std::vector<std::string>& ids) {
  if (static_cast<std::size_t>(h.rows()) != ids.size())
    throw DomainError("write_embedding_tsv: id count does not match rows");
  out << "node";
  for (Eigen::Index j = 0; j < h.cols(); ++j) out << "\tdim_" << (j + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    out << ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < h.cols(); ++j) out << '\t' << format_double(h(i, j));
    out << '\n';
  }
}

}  // namespace gme
