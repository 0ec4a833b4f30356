#include "gme/modularity.hpp"

#include "gme/errors.hpp"
#include "gme/tsv.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace gme {

ModularityMatrix::ModularityMatrix(Eigen::MatrixXd q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols()) throw DomainError("modularity matrix must be square");
  if (q_.size() == 0) return;
  const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("modularity matrix must be symmetric");
}

ModularityMatrix ModularityMatrix::zero_diagonal() const {
  Eigen::MatrixXd q = q_;
  q.diagonal().setZero();
  return ModularityMatrix(std::move(q));
}

ModularityMatrix ModularityMatrix::normalized() const {
  const double peak = q_.size() == 0 ? 0.0 : q_.cwiseAbs().maxCoeff();
  if (peak == 0.0) return *this;
  return ModularityMatrix(q_ / peak);
}

ModularityMatrix modularity_matrix(const SampledGraph& s) {
  Eigen::MatrixXd q = s.p - s.p_start * s.p_end.transpose();
  // p is symmetric for every sampler, so the outer product is too; average
  // away the last-bit differences of the two marginal vectors.
  q = 0.5 * (q + q.transpose()).eval();
  return ModularityMatrix(std::move(q));
}

Partition::Partition(std::vector<std::size_t> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) return;
  clusters_ = *std::max_element(assignment_.begin(), assignment_.end()) + 1;
  std::vector<bool> used(clusters_, false);
  for (std::size_t c : assignment_) used[c] = true;
  for (std::size_t k = 0; k < clusters_; ++k)
    if (!used[k]) throw DomainError("partition: cluster " + std::to_string(k) + " is empty");
}

std::vector<std::vector<std::size_t>> Partition::members() const {
  std::vector<std::vector<std::size_t>> out(clusters_);
  for (std::size_t u = 0; u < assignment_.size(); ++u) out[assignment_[u]].push_back(u);
  return out;
}

Eigen::MatrixXd Partition::indicator() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(assignment_.size(), clusters_);
  for (std::size_t u = 0; u < assignment_.size(); ++u) h(u, assignment_[u]) = 1.0;
  return h;
}

double set_covariance(const ModularityMatrix& q, std::span<const std::size_t> s1,
                      std::span<const std::size_t> s2) {
  const std::size_t n = q.size();
  auto check = [n](std::span<const std::size_t> s) {
    for (std::size_t u : s)
      if (u >= n) throw DomainError("set covariance: node index " + std::to_string(u) + " out of range");
  };
  check(s1);
  check(s2);
  double total = 0.0;
  for (std::size_t u : s1)
    for (std::size_t w : s2) total += q(u, w);
  return total;
}

bool is_community(const ModularityMatrix& q, std::span<const std::size_t> s) {
  return set_covariance(q, s, s) >= 0.0;
}

namespace {

void require_matching(const ModularityMatrix& q, const Partition& p) {
  if (p.size() != q.size()) throw DomainError("partition size does not match modularity matrix");
}

}  // namespace

double partition_modularity(const ModularityMatrix& q, const Partition& p) {
  require_matching(q, p);
  double total = 0.0;
  for (const auto& cluster : p.members()) total += set_covariance(q, cluster, cluster);
  return total;
}

double normalized_modularity(const ModularityMatrix& q, const Partition& p) {
  require_matching(q, p);
  double total = 0.0;
  for (const auto& cluster : p.members()) {
    if (cluster.empty()) throw DomainError("normalized modularity: empty cluster");
    total += set_covariance(q, cluster, cluster) / static_cast<double>(cluster.size());
  }
  return total;
}

void write_matrix_tsv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << '\t';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace gme
