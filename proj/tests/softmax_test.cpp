#include "gme/errors.hpp"
#include "gme/evaluation.hpp"
#include "gme/modularity.hpp"
#include "gme/pipeline.hpp"
#include "gme/sampling.hpp"
#include "gme/softmax.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace gme;
namespace t = gme::testing;

namespace {

double triple_loop(const Eigen::MatrixXd& q, const Eigen::MatrixXd& h) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < h.cols(); ++k)
    for (Eigen::Index u = 0; u < q.rows(); ++u)
      for (Eigen::Index w = 0; w < q.rows(); ++w) sum += q(u, w) * h(u, k) * h(w, k);
  return sum;
}

ModularityMatrix random_zero_diagonal(Eigen::Index n, Rng& rng) {
  Eigen::MatrixXd q = t::random_symmetric(n, rng);
  q.diagonal().setZero();
  return ModularityMatrix(q);
}

Eigen::MatrixXd random_stochastic(Eigen::Index n, Eigen::Index k, Rng& rng) {
  Eigen::MatrixXd h(n, k);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index j = 0; j < k; ++j) h(u, j) = rng.uniform(0.05, 1.0);
    h.row(u) /= h.row(u).sum();
  }
  return h;
}

void expect_row_stochastic(const Eigen::MatrixXd& h) {
  EXPECT_GE(h.minCoeff(), 0.0);
  EXPECT_LE((h.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
}

}  // namespace

TEST(SoftmaxObjective, Examples) {
  Rng rng(61);
  const Eigen::MatrixXd h = random_stochastic(6, 2, rng);
  EXPECT_EQ(softmax_objective(ModularityMatrix(Eigen::MatrixXd::Zero(6, 6)), h), 0.0);

  const ModularityMatrix q = modularity_matrix(edge_sampling(t::barbell_graph())).zero_diagonal();
  EXPECT_NEAR(softmax_objective(q, h), triple_loop(q.matrix(), h), 1e-12);

  const Partition p({0, 0, 0, 1, 1, 1});
  EXPECT_NEAR(softmax_objective(q, p.indicator()), partition_modularity(q, p), 1e-15);
}

TEST(SoftmaxUpdate, UniformZLeavesRowUnchanged) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(3, 3);
  q(1, 2) = q(2, 1) = 0.3;
  Eigen::MatrixXd h(3, 2);
  h << 0.7, 0.3, 0.4, 0.6, 0.2, 0.8;
  const Eigen::MatrixXd before = h;
  softmax_update_node(ModularityMatrix(q), h, 0, 5.0);
  EXPECT_EQ(h, before);
}

TEST(SoftmaxUpdate, TwoNodeHandValue) {
  Eigen::Matrix2d q;
  q << 0, 0.5, 0.5, 0;
  Eigen::MatrixXd h(2, 2);
  h << 0.9, 0.1, 0.6, 0.4;
  softmax_update_node(ModularityMatrix(q), h, 0, 1.0);
  const double a = 0.9 * std::exp(0.3);
  const double b = 0.1 * std::exp(0.2);
  EXPECT_NEAR(h(0, 0), a / (a + b), 1e-15);
  EXPECT_NEAR(h(0, 1), b / (a + b), 1e-15);
  EXPECT_NEAR(h(0, 0), 0.908647, 1e-6);
  EXPECT_EQ(h.row(1), Eigen::RowVector2d(0.6, 0.4));
}

TEST(SoftmaxUpdate, MatchesUnshiftedClosedForm) {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 3 + trial % 10;
    const Eigen::Index k = 2 + trial % 4;
    Eigen::MatrixXd q = t::random_symmetric(n, rng);
    q.diagonal() = t::random_matrix(n, 1, rng);  // must be ignored
    Eigen::MatrixXd h = random_stochastic(n, k, rng);
    const std::size_t u = static_cast<std::size_t>(trial % n);
    const double theta = 0.5;

    Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(k);
    for (Eigen::Index w = 0; w < n; ++w)
      if (w != static_cast<Eigen::Index>(u)) z += q(w, u) * h.row(w);
    Eigen::RowVectorXd expected(k);
    for (Eigen::Index j = 0; j < k; ++j) expected(j) = std::exp(theta * z(j)) * h(u, j);
    expected /= expected.sum();

    softmax_update_node(ModularityMatrix(q), h, u, theta);
    EXPECT_LE((h.row(u) - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SoftmaxUpdate, MonotoneAfterEveryNodeUpdate) {
  Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 29;
    const Eigen::Index k = 2 + trial % 4;
    const ModularityMatrix q = random_zero_diagonal(n, rng);
    for (double theta : {0.1, 1.0, 10.0 * n}) {
      Eigen::MatrixXd h = random_stochastic(n, k, rng);
      double obj = softmax_objective(q, h);
      for (int sweep = 0; sweep < 3; ++sweep) {
        for (Eigen::Index u = 0; u < n; ++u) {
          softmax_update_node(q, h, static_cast<std::size_t>(u), theta);
          const double next = softmax_objective(q, h);
          ASSERT_GE(next - obj, -1e-12) << "trial " << trial << " theta " << theta;
          obj = next;
        }
      }
      expect_row_stochastic(h);
    }
  }
}

TEST(SoftmaxSweep, ClampedRowsBitIdentical) {
  Rng rng(64);
  const ModularityMatrix q = random_zero_diagonal(20, rng);
  Eigen::MatrixXd h = random_stochastic(20, 3, rng);
  std::vector<bool> clamped(20, false);
  clamped[3] = clamped[11] = true;
  const Eigen::MatrixXd before = h;
  for (int sweep = 0; sweep < 5; ++sweep) softmax_sweep(q, h, 2.0, clamped);
  EXPECT_TRUE((h.row(3).array() == before.row(3).array()).all());
  EXPECT_TRUE((h.row(11).array() == before.row(11).array()).all());
  EXPECT_FALSE((h.row(0).array() == before.row(0).array()).all());
}

TEST(SoftmaxSweep, EqualsSequentialNodeUpdates) {
  Rng rng(65);
  const ModularityMatrix q = random_zero_diagonal(15, rng);
  Eigen::MatrixXd a = random_stochastic(15, 3, rng);
  Eigen::MatrixXd b = a;
  softmax_sweep(q, a, 3.0);
  for (std::size_t u = 0; u < 15; ++u) softmax_update_node(q, b, u, 3.0);
  EXPECT_TRUE((a.array() == b.array()).all());
}

TEST(SoftmaxInitial, NonUniformRowStochastic) {
  const Eigen::MatrixXd h = softmax_initial(50, 4, 9);
  expect_row_stochastic(h);
  EXPECT_GT(h.minCoeff(), 0.9 / 1.1 / 4.0 - 1e-12);
  EXPECT_NE(h(0, 0), h(0, 1));
  EXPECT_EQ(h, softmax_initial(50, 4, 9));
  EXPECT_NE(h, softmax_initial(50, 4, 10));
}

TEST(SoftmaxCluster, ZeroQReturnsInitialAfterOneSweep) {
  const StochasticEmbedding e = softmax_cluster(ModularityMatrix(Eigen::MatrixXd::Zero(5, 5)), 3, {.seed = 4});
  EXPECT_EQ(e.sweeps, 1u);
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.h, softmax_initial(5, 3, 4));
}

TEST(SoftmaxCluster, RecoversBarbellTriangles) {
  const ModularityMatrix q = modularity_matrix(edge_sampling(t::barbell_graph()));
  // exhaustive 2-partition oracle
  double best = -INFINITY;
  std::vector<std::size_t> best_assignment;
  t::for_each_partition(6, [&](const std::vector<std::size_t>& a, std::size_t k) {
    if (k != 2) return;
    const double value = partition_modularity(q, Partition(a));
    if (value > best) {
      best = value;
      best_assignment = a;
    }
  });
  ASSERT_EQ(best_assignment, (std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StochasticEmbedding e = softmax_cluster(q, 2, {.seed = seed});
    const std::vector<std::size_t> a = hard_assign(e.h);
    for (std::size_t u = 0; u < 6; ++u) EXPECT_EQ(a[u] == a[0], best_assignment[u] == 0) << "seed " << seed;
    expect_row_stochastic(e.h);
  }
}

TEST(SoftmaxCluster, HistoryMonotoneAndDeterministic) {
  Rng rng(66);
  const Graph g = t::random_connected_graph(40, 0.1, rng);
  const ModularityMatrix q = modularity_matrix(random_walk_sampling(g, 2));
  const StochasticEmbedding e = softmax_cluster(q, 4, {.seed = 3});
  ASSERT_EQ(e.history.size(), e.sweeps + 1);
  for (std::size_t i = 1; i < e.history.size(); ++i) EXPECT_GE(e.history[i] - e.history[i - 1], -1e-12);
  for (std::size_t i = 1; i + 1 < e.history.size(); ++i) EXPECT_GT(e.history[i], e.history[i - 1]);
  const StochasticEmbedding again = softmax_cluster(q, 4, {.seed = 3});
  EXPECT_TRUE((e.h.array() == again.h.array()).all());
  EXPECT_EQ(e.history, again.history);
}

TEST(SoftmaxCluster, ReportsNonConvergence) {
  Rng rng(67);
  const ModularityMatrix q = random_zero_diagonal(20, rng);
  const StochasticEmbedding e = softmax_cluster(q, 3, {.theta = 0.01, .max_sweeps = 2});
  EXPECT_FALSE(e.converged);
  EXPECT_EQ(e.sweeps, 2u);
}

TEST(SoftmaxCluster, RejectsBadParameters) {
  const ModularityMatrix q(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_THROW(softmax_cluster(q, 1), DomainError);
  EXPECT_THROW(softmax_cluster(q, 2, {.theta = -1.0}), DomainError);
}

TEST(SoftmaxClassify, AllLabeledGivesOneHot) {
  Rng rng(68);
  const ModularityMatrix q = random_zero_diagonal(6, rng);
  const LabelSet labels({{0, 0}, {1, 1}, {2, 2}, {3, 0}, {4, 1}, {5, 2}}, 3);
  const StochasticEmbedding e = softmax_classify(q, labels, 3);
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(e.h(u, j), j == u % 3 ? 1.0 : 0.0);
  for (double v : e.history) EXPECT_EQ(v, e.history.front());
}

TEST(SoftmaxClassify, EmptyClampSetMatchesCluster) {
  Rng rng(69);
  const ModularityMatrix q = random_zero_diagonal(12, rng);
  const StochasticEmbedding cluster = softmax_cluster(q, 3, {.theta = 2.0, .seed = 5});
  Eigen::MatrixXd h = softmax_initial(12, 3, 5);
  const ModularityMatrix zq = q.zero_diagonal();
  for (std::size_t s = 0; s < cluster.sweeps; ++s) softmax_sweep(zq, h, 2.0, std::vector<bool>(12, false));
  EXPECT_TRUE((h.array() == cluster.h.array()).all());
}

TEST(SoftmaxClassify, PlantedTwoBlocks) {
  double correct = 0.0;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PlantedPartition pp = planted_partition(2, 20, 0.8, 0.05, seed);
    ClassifyConfig config;
    config.seed = seed;
    const ClassifyResult r = run_classification(pp.graph, pp.labels, config);
    for (std::size_t u : r.split.holdout) {
      correct += r.predicted[u] == pp.labels[u] ? 1.0 : 0.0;
      total += 1.0;
    }
  }
  EXPECT_GE(correct / total, 0.95);
}

TEST(SoftmaxClassify, RejectsBadLabels) {
  const ModularityMatrix q(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_THROW(LabelSet({{0, 3}}, 3), DomainError);
  EXPECT_THROW(softmax_classify(q, LabelSet({}, 2), 2), DomainError);
  EXPECT_THROW(softmax_classify(q, LabelSet({{0, 2}}, 3), 2), DomainError);
  EXPECT_THROW(softmax_classify(q, LabelSet({{7, 0}}, 2), 2), DomainError);
}

TEST(HardAssign, Examples) {
  Eigen::MatrixXd h(4, 3);
  h << 1, 0, 0, 0, 0, 1, 0.5, 0.5, 0, 0.2, 0.5, 0.3;
  EXPECT_EQ(hard_assign(h), (std::vector<std::size_t>{0, 2, 0, 1}));
}

TEST(History, Tsv) {
  std::ostringstream out;
  write_history_tsv(out, {0.0, 0.25});
  EXPECT_EQ(out.str(), "sweep\tobjective\n0\t0\n1\t0.25\n");
}
