#include "gme/errors.hpp"
#include "gme/graph.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace gme;
using gme::testing::parse_graph;

TEST(LoadEdgeList, AssignsIndicesInFirstAppearanceOrder) {
  const Graph g = parse_graph("a b\nb c");
  ASSERT_EQ(g.num_nodes(), 3u);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2, 1.0}));
  EXPECT_EQ(g.id(0), "a");
  EXPECT_EQ(g.index_of("c"), 2u);
  EXPECT_EQ(g.index_of("zz"), 3u);
}

TEST(LoadEdgeList, SumsDuplicateEdges) {
  const Graph g = parse_graph("a b 2\na b 3");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 5.0}));
}

TEST(LoadEdgeList, SumsReversedDuplicates) {
  const Graph g = parse_graph("x y 1.5\ny x 0.5\n");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.0);
}

TEST(LoadEdgeList, SkipsCommentsAndBlankLines) {
  const Graph g = parse_graph("# header\n\na b  # trailing\n   \nb c 2\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_DOUBLE_EQ(g.weight(1, 2), 2.0);
}

TEST(LoadEdgeList, RejectsMalformedLines) {
  EXPECT_THROW(parse_graph("a a"), FormatError);
  EXPECT_THROW(parse_graph("a b 0"), FormatError);
  EXPECT_THROW(parse_graph("a b -1"), FormatError);
  EXPECT_THROW(parse_graph("a"), FormatError);
  EXPECT_THROW(parse_graph("a b heavy"), FormatError);
  EXPECT_THROW(parse_graph("a b 1 2"), FormatError);
}

TEST(LoadEdgeList, ErrorMessageCarriesLineNumber) {
  try {
    parse_graph("a b\nc c\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(Graph, ConstructorValidates) {
  EXPECT_THROW(Graph(2, {{0, 2, 1.0}}), DomainError);
  EXPECT_THROW(Graph(2, {{1, 1, 1.0}}), DomainError);
  EXPECT_THROW(Graph(2, {{0, 1, 0.0}}), DomainError);
}

TEST(Graph, AdjacencyIsSymmetricBitExact) {
  Rng rng(7);
  const Graph g = gme::testing::random_connected_graph(40, 0.1, rng, true);
  const Eigen::MatrixXd a = g.adjacency();
  EXPECT_TRUE((a.array() == a.transpose().array()).all());
  EXPECT_DOUBLE_EQ(g.total_weight(), a.sum());
}

TEST(IdMap, WritesIdTabIndex) {
  const Graph g = parse_graph("n7 n3\n");
  std::ostringstream out;
  write_id_map(out, g);
  EXPECT_EQ(out.str(), "n7\t0\nn3\t1\n");
}

TEST(Laplacian, SingleEdge) {
  const Eigen::MatrixXd l = laplacian(gme::testing::path_graph(2));
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_EQ(l, expected);
}

TEST(Laplacian, PathOfThree) {
  const Eigen::MatrixXd l = laplacian(gme::testing::path_graph(3));
  Eigen::Matrix3d expected;
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(l, expected);
}

TEST(Laplacian, Triangle) {
  const Eigen::MatrixXd l = laplacian(gme::testing::complete_graph(3));
  for (int u = 0; u < 3; ++u)
    for (int w = 0; w < 3; ++w) EXPECT_EQ(l(u, w), u == w ? 2.0 : -1.0);
}

TEST(Laplacian, RowSumsVanish) {
  Rng rng(11);
  const Graph unit = gme::testing::random_connected_graph(30, 0.2, rng);
  EXPECT_EQ(laplacian(unit).rowwise().sum().cwiseAbs().maxCoeff(), 0.0);
  const Graph real = gme::testing::random_connected_graph(30, 0.2, rng, true);
  EXPECT_LE(laplacian(real).rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Laplacian, PositiveSemidefinite) {
  Rng rng(12);
  const Graph g = gme::testing::random_connected_graph(25, 0.2, rng, true);
  EXPECT_GE(gme::testing::dense_eigenvalues_desc(laplacian(g)).minCoeff(), -1e-10);
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(is_connected(gme::testing::path_graph(3)));
  EXPECT_FALSE(is_connected(Graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})));
  EXPECT_TRUE(is_connected(Graph(1, {})));
}

TEST(Connectivity, LargestComponentKeepsOrderAndIds) {
  const Graph g = parse_graph("a b\nc d\nd e\n");
  EXPECT_EQ(connected_components(g), (std::vector<std::size_t>{0, 0, 1, 1, 1}));
  const Subgraph sub = largest_component(g);
  EXPECT_EQ(sub.graph.num_nodes(), 3u);
  EXPECT_EQ(sub.original, (std::vector<NodeIndex>{2, 3, 4}));
  EXPECT_EQ(sub.graph.id(0), "c");
  EXPECT_TRUE(is_connected(sub.graph));
}
