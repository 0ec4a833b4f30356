#pragma once

#include "gme/modularity.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace gme {

/// Partial node -> class map used to clamp rows of the softmax iteration.
class LabelSet {
public:
  LabelSet() = default;
  /// Throws DomainError if a class index is >= num_classes.
  LabelSet(std::map<std::size_t, std::size_t> labels, std::size_t num_classes);

  const std::map<std::size_t, std::size_t>& labels() const noexcept { return labels_; }
  std::size_t num_classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::optional<std::size_t> find(std::size_t node) const;

private:
  std::map<std::size_t, std::size_t> labels_;
  std::size_t classes_{0};
};

/// Row-stochastic embedding produced by the softmax iteration.
struct StochasticEmbedding {
  Eigen::MatrixXd h;  // n x K
  double theta{0.0};
  std::size_t sweeps{0};
  bool converged{false};
  /// objective before the first sweep, then after each sweep
  std::vector<double> history;
};

struct SoftmaxOptions {
  /// Inverse temperature; n^2 when unset.
  std::optional<double> theta;
  std::uint64_t seed{0};
  std::size_t max_sweeps{1000};
  /// Stop once a sweep gains less than tol * max(1, |objective|).
  double tol{1e-12};
};

/// sum_k sum_u sum_w q(u,w) h(u,k) h(w,k), i.e. tr(H^T Q H). Callers pass
/// Q with a zeroed diagonal.
double softmax_objective(const ModularityMatrix& q, const Eigen::MatrixXd& h);

/// Replaces row u by exp(theta z) .* h_u / normalizer, with
/// z_k = sum_{w != u} q(w,u) h(w,k). The exponent is shifted by max_k z_k
/// before exponentiation.
void softmax_update_node(const ModularityMatrix& q, Eigen::MatrixXd& h, std::size_t u, double theta);

/// One pass over u = 0..n-1 in order, each update seeing the previous ones.
/// Rows flagged in `clamped` are left untouched.
void softmax_sweep(const ModularityMatrix& q, Eigen::MatrixXd& h, double theta,
                   const std::vector<bool>& clamped = {});

/// Seeded starting point: h(u,k) proportional to 1 + 0.1 xi, xi uniform on (-1, 1).
Eigen::MatrixXd softmax_initial(std::size_t n, std::size_t k, std::uint64_t seed);

/// Unsupervised softmax clustering of a symmetric Q (its diagonal is
/// zeroed first). Throws DomainError for K < 2 or a non-positive theta.
StochasticEmbedding softmax_cluster(const ModularityMatrix& q, std::size_t k, const SoftmaxOptions& options = {});

/// As softmax_cluster, with labeled rows fixed to their one-hot class for
/// the whole run. Throws DomainError for an empty label set, out-of-range
/// nodes or classes, or K < the label set's class count.
StochasticEmbedding softmax_classify(const ModularityMatrix& q, const LabelSet& labels, std::size_t k,
                                     const SoftmaxOptions& options = {});

/// Row-wise argmax, ties to the smallest cluster index. Cluster indices are
/// the raw argmax values, so some may be unused.
std::vector<std::size_t> hard_assign(const Eigen::MatrixXd& h);

/// `sweep\tobjective`, sweep 0 being the initial point.
void write_history_tsv(std::ostream& out, const std::vector<double>& history);

}  // namespace gme
