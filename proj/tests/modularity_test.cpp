#include "gme/errors.hpp"
#include "gme/modularity.hpp"
#include "gme/sampling.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace gme;
namespace t = gme::testing;

namespace {

ModularityMatrix edge_q(const Graph& g) { return modularity_matrix(edge_sampling(g)); }

}  // namespace

TEST(ModularityMatrix, TriangleEntries) {
  const ModularityMatrix q = edge_q(t::complete_graph(3));
  for (int u = 0; u < 3; ++u)
    for (int w = 0; w < 3; ++w) EXPECT_NEAR(q(u, w), u == w ? -1.0 / 9.0 : 1.0 / 18.0, 1e-15);
}

TEST(ModularityMatrix, PathEntries) {
  Eigen::Matrix3d expected;
  expected << -1, 2, -1, 2, -4, 2, -1, 2, -1;
  expected /= 16.0;
  EXPECT_LE((edge_q(t::path_graph(3)).matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ModularityMatrix, PathWalkTwoIsZero) {
  const ModularityMatrix q = modularity_matrix(random_walk_sampling(t::path_graph(3), 2));
  EXPECT_LE(q.matrix().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ModularityMatrix, RejectsAsymmetricInput) {
  Eigen::Matrix2d m;
  m << 0, 1, 0.5, 0;
  EXPECT_THROW(ModularityMatrix{m}, DomainError);
  EXPECT_THROW(ModularityMatrix{Eigen::MatrixXd(2, 3)}, DomainError);
}

TEST(ModularityMatrix, NewmanEquivalence) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = t::random_connected_graph(40, 0.1, rng, trial % 2 == 1);
    const Eigen::MatrixXd a = g.adjacency();
    const Eigen::VectorXd d = a.rowwise().sum();
    const double m2 = a.sum();
    const Eigen::MatrixXd newman = a / m2 - d * d.transpose() / (m2 * m2);
    EXPECT_LE((edge_q(g).matrix() - newman).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ModularityMatrix, ZeroSumsForEverySampler) {
  Rng rng(22);
  const Graph g = t::random_connected_graph(35, 0.1, rng, true);
  const std::vector<SampledGraph> samples = {edge_sampling(g), random_walk_sampling(g, 3),
                                             random_walk_sampling(g, 4, WalkLengths::Exact)};
  for (const SampledGraph& s : samples) {
    const Eigen::MatrixXd q = modularity_matrix(s).matrix();
    EXPECT_LE(q.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(q.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((q - q.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(q.cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(ModularityMatrix, ZeroDiagonalAndNormalized) {
  const ModularityMatrix q = edge_q(t::path_graph(3));
  const ModularityMatrix z = q.zero_diagonal();
  EXPECT_EQ(z.matrix().diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(z(0, 1), q(0, 1));
  EXPECT_DOUBLE_EQ(q.normalized().matrix().cwiseAbs().maxCoeff(), 1.0);
  EXPECT_DOUBLE_EQ(q.normalized()(0, 1), 0.5);
  EXPECT_EQ(ModularityMatrix(Eigen::MatrixXd::Zero(2, 2)).normalized().matrix(), Eigen::MatrixXd::Zero(2, 2));
}

TEST(Partition, ValidatesDenseIndices) {
  EXPECT_THROW(Partition({0, 2, 2}), DomainError);
  const Partition p({1, 0, 1});
  EXPECT_EQ(p.num_clusters(), 2u);
  EXPECT_EQ(p.members()[1], (std::vector<std::size_t>{0, 2}));
  Eigen::MatrixXd expected(3, 2);
  expected << 0, 1, 1, 0, 0, 1;
  EXPECT_EQ(p.indicator(), expected);
}

TEST(SetCovariance, Examples) {
  const ModularityMatrix path = edge_q(t::path_graph(3));
  const std::vector<std::size_t> all{0, 1, 2};
  const std::vector<std::size_t> s{0, 1};
  EXPECT_NEAR(set_covariance(path, all, all), 0.0, 1e-12);
  EXPECT_NEAR(set_covariance(path, s, s), -1.0 / 16.0, 1e-15);
  EXPECT_NEAR(set_covariance(edge_q(t::complete_graph(3)), s, s), -1.0 / 9.0, 1e-15);
  const std::vector<std::size_t> bad{0, 3};
  EXPECT_THROW(set_covariance(path, bad, s), DomainError);
}

TEST(SetCovariance, CommunityPredicate) {
  const ModularityMatrix q = edge_q(t::barbell_graph());
  const std::vector<std::size_t> triangle{0, 1, 2};
  const std::vector<std::size_t> split{0, 3};
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  EXPECT_TRUE(is_community(q, triangle));
  EXPECT_FALSE(is_community(q, split));
  // q(V,V) is zero, and zero counts as a community
  EXPECT_TRUE(is_community(ModularityMatrix(Eigen::MatrixXd::Zero(6, 6)), all));
}

TEST(PartitionModularity, Examples) {
  const ModularityMatrix q = edge_q(t::path_graph(3));
  EXPECT_NEAR(partition_modularity(q, Partition({0, 0, 0})), 0.0, 1e-12);
  EXPECT_NEAR(partition_modularity(q, Partition({0, 0, 1})), -1.0 / 8.0, 1e-15);
  EXPECT_NEAR(partition_modularity(q, Partition({0, 1, 2})), -3.0 / 8.0, 1e-15);
}

TEST(PartitionModularity, EqualsIndicatorTrace) {
  Rng rng(23);
  const Graph g = t::random_connected_graph(20, 0.2, rng);
  const ModularityMatrix q = edge_q(g);
  std::vector<std::size_t> a(20);
  for (std::size_t u = 0; u < 20; ++u) a[u] = u % 4;
  const Partition p(a);
  const Eigen::MatrixXd h = p.indicator();
  EXPECT_NEAR(partition_modularity(q, p), (h.transpose() * q.matrix() * h).trace(), 1e-14);
  const Eigen::MatrixXd scaled = h * (h.transpose() * h).diagonal().cwiseInverse().cwiseSqrt().asDiagonal();
  EXPECT_NEAR(normalized_modularity(q, p), (scaled.transpose() * q.matrix() * scaled).trace(), 1e-14);
}

TEST(NormalizedModularity, Examples) {
  const ModularityMatrix q = edge_q(t::path_graph(3));
  EXPECT_NEAR(normalized_modularity(q, Partition({0, 0, 0})), 0.0, 1e-12);
  EXPECT_NEAR(normalized_modularity(q, Partition({0, 0, 1})), -3.0 / 32.0, 1e-15);
}

// Every partition of every small graph against the top-K eigenvalue sum.
TEST(NormalizedModularity, RayleighRitzBoundExhaustive) {
  Rng rng(24);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const Graph g = t::random_connected_graph(n, 0.4, rng, trial % 2 == 1);
      const ModularityMatrix q = edge_q(g);
      const Eigen::VectorXd lambda = t::dense_eigenvalues_desc(q.matrix());
      t::for_each_partition(n, [&](const std::vector<std::size_t>& a, std::size_t k) {
        const double bound = lambda.head(static_cast<Eigen::Index>(k)).sum();
        EXPECT_LE(normalized_modularity(q, Partition(a)), bound + 1e-10);
      });
    }
  }
}

TEST(WriteMatrix, SeventeenDigits) {
  Eigen::Matrix2d m;
  m << 0.1, -1.0 / 3.0, 2.0, 0.0;
  std::ostringstream out;
  write_matrix_tsv(out, m);
  EXPECT_EQ(out.str(), "0.10000000000000001\t-0.33333333333333331\n2\t0\n");
}
