#include "gme/softmax.hpp"

#include "gme/errors.hpp"
#include "gme/random.hpp"
#include "gme/tsv.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace gme {

LabelSet::LabelSet(std::map<std::size_t, std::size_t> labels, std::size_t num_classes)
    : labels_(std::move(labels)), classes_(num_classes) {
  for (const auto& [node, cls] : labels_)
    if (cls >= classes_)
      throw DomainError("label of node " + std::to_string(node) + " is >= class count " + std::to_string(classes_));
}

std::optional<std::size_t> LabelSet::find(std::size_t node) const {
  const auto it = labels_.find(node);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

double softmax_objective(const ModularityMatrix& q, const Eigen::MatrixXd& h) {
  if (static_cast<std::size_t>(h.rows()) != q.size()) throw DomainError("softmax_objective: dimension mismatch");
  return (h.transpose() * q.matrix() * h).trace();
}

void softmax_update_node(const ModularityMatrix& q, Eigen::MatrixXd& h, std::size_t u, double theta) {
  const Eigen::Index row = static_cast<Eigen::Index>(u);
  const Eigen::Index k = h.cols();
  // column u of Q is its row u; skip the diagonal explicitly
  Eigen::RowVectorXd z = q.matrix().col(row).transpose() * h;
  z -= q(u, u) * h.row(row);
  const double peak = z.maxCoeff();
  // a uniform multiplier cancels in the normalization
  if (peak == z.minCoeff()) return;
  Eigen::RowVectorXd tilde(k);
  for (Eigen::Index j = 0; j < k; ++j) tilde(j) = std::exp(theta * (z(j) - peak)) * h(row, j);
  const double total = tilde.sum();
  if (total > 0.0 && std::isfinite(total)) h.row(row) = tilde / total;
}

void softmax_sweep(const ModularityMatrix& q, Eigen::MatrixXd& h, double theta, const std::vector<bool>& clamped) {
  for (std::size_t u = 0; u < q.size(); ++u) {
    if (!clamped.empty() && clamped[u]) continue;
    softmax_update_node(q, h, u, theta);
  }
}

Eigen::MatrixXd softmax_initial(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd h(n, k);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 0; j < k; ++j) h(u, j) = 1.0 + 0.1 * rng.uniform(-1.0, 1.0);
    h.row(u) /= h.row(u).sum();
  }
  return h;
}

namespace {

StochasticEmbedding run(const ModularityMatrix& q_in, Eigen::MatrixXd h, const std::vector<bool>& clamped,
                        const SoftmaxOptions& options) {
  const ModularityMatrix q = q_in.zero_diagonal();
  const double n = static_cast<double>(q.size());
  const double theta = options.theta.value_or(n * n);
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("softmax: theta must be positive and finite");

  StochasticEmbedding out;
  out.theta = theta;
  double objective = softmax_objective(q, h);
  out.history.push_back(objective);
  while (out.sweeps < options.max_sweeps) {
    softmax_sweep(q, h, theta, clamped);
    ++out.sweeps;
    const double next = softmax_objective(q, h);
    out.history.push_back(next);
    const double gain = next - objective;
    objective = next;
    if (gain < options.tol * std::max(1.0, std::abs(objective))) {
      out.converged = true;
      break;
    }
  }
  out.h = std::move(h);
  return out;
}

}  // namespace

StochasticEmbedding softmax_cluster(const ModularityMatrix& q, std::size_t k, const SoftmaxOptions& options) {
  if (k < 2) throw DomainError("softmax_cluster: K must be >= 2");
  return run(q, softmax_initial(q.size(), k, options.seed), {}, options);
}

StochasticEmbedding softmax_classify(const ModularityMatrix& q, const LabelSet& labels, std::size_t k,
                                     const SoftmaxOptions& options) {
  if (labels.empty()) throw DomainError("softmax_classify: no labeled nodes");
  if (k < 2) throw DomainError("softmax_classify: K must be >= 2");
  if (k < labels.num_classes()) throw DomainError("softmax_classify: K is smaller than the class count");
  Eigen::MatrixXd h = softmax_initial(q.size(), k, options.seed);
  std::vector<bool> clamped(q.size(), false);
  for (const auto& [node, cls] : labels.labels()) {
    if (node >= q.size()) throw DomainError("softmax_classify: labeled node out of range");
    if (cls >= k) throw DomainError("softmax_classify: label index >= K");
    h.row(static_cast<Eigen::Index>(node)).setZero();
    h(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(cls)) = 1.0;
    clamped[node] = true;
  }
  return run(q, std::move(h), clamped, options);
}

std::vector<std::size_t> hard_assign(const Eigen::MatrixXd& h) {
  std::vector<std::size_t> out(static_cast<std::size_t>(h.rows()), 0);
  for (Eigen::Index u = 0; u < h.rows(); ++u) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < h.cols(); ++j)
      if (h(u, j) > h(u, best)) best = j;
    out[static_cast<std::size_t>(u)] = static_cast<std::size_t>(best);
  }
  return out;
}

void write_history_tsv(std::ostream& out, const std::vector<double>& history) {
  out << "sweep\tobjective\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << i << '\t' << format_double(history[i]) << '\n';
}

}  // namespace gme
