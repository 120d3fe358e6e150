#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "albsim/errors.hpp"
#include "albsim/graph.hpp"
#include "albsim/graph_io.hpp"
#include "support/oracles.hpp"

namespace albsim {
namespace {

using testing::edge_triples;
using testing::csc_triples;

Graph three_vertex() {
  std::istringstream in("0 1\n0 2\n1 2\n");
  return load_edge_list(in, false);
}

std::vector<edge_t> as_vector(std::span<const edge_t> s) { return {s.begin(), s.end()}; }
std::vector<vertex_t> as_vector(std::span<const vertex_t> s) { return {s.begin(), s.end()}; }

TEST(Graph, DefaultIsEmpty) {
  Graph g;
  EXPECT_EQ(g.num_vertices(), 0u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(as_vector(g.out_offsets()), std::vector<edge_t>{0});
}

TEST(Graph, FromEdgesBuildsCsr) {
  const Graph g = three_vertex();
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(as_vector(g.out_offsets()), (std::vector<edge_t>{0, 2, 3, 3}));
  EXPECT_EQ(as_vector(g.out_targets()), (std::vector<vertex_t>{1, 2, 2}));
  EXPECT_EQ(g.out_degree(0), 2u);
  EXPECT_EQ(g.max_degree(Direction::push), 2u);
}

TEST(Graph, KeepsDuplicatesAndSelfLoops) {
  const std::vector<vertex_t> s{0, 0, 1};
  const std::vector<vertex_t> t{1, 1, 1};
  const Graph g = Graph::from_edges(2, s, t);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.out_degree(0), 2u);
  EXPECT_EQ(g.out_degree(1), 1u);
}

TEST(Graph, FromEdgesRejectsOutOfRangeEndpoint) {
  const std::vector<vertex_t> s{0};
  const std::vector<vertex_t> t{5};
  EXPECT_THROW(Graph::from_edges(3, s, t), range_error);
}

TEST(Graph, FromCsrValidatesInvariants) {
  EXPECT_THROW(Graph::from_csr(2, {0, 1}, {1}), config_error);
  EXPECT_THROW(Graph::from_csr(2, {1, 1, 1}, {1}), config_error);
  EXPECT_THROW(Graph::from_csr(2, {0, 2, 1}, {1, 0}), config_error);
  EXPECT_THROW(Graph::from_csr(2, {0, 1, 1}, {1, 0}), config_error);
  EXPECT_THROW(Graph::from_csr(2, {0, 1, 1}, {7}), range_error);
  EXPECT_NO_THROW(Graph::from_csr(2, {0, 1, 1}, {1}));
}

TEST(Graph, CscAccessRequiresBuild) {
  const Graph g = three_vertex();
  EXPECT_FALSE(g.has_csc());
  EXPECT_THROW((void)g.in_offsets(), std::logic_error);
  EXPECT_THROW((void)g.in_degree(0), std::logic_error);
}

TEST(BuildCsc, ThreeVertexGraph) {
  const Graph g = build_csc(three_vertex());
  ASSERT_TRUE(g.has_csc());
  EXPECT_EQ(as_vector(g.in_offsets()), (std::vector<edge_t>{0, 0, 1, 3}));
  EXPECT_EQ(as_vector(g.in_targets()), (std::vector<vertex_t>{0, 0, 1}));
  EXPECT_EQ(csc_triples(g), edge_triples(g));
}

TEST(BuildCsc, NoEdgesGivesZeroOffsets) {
  const Graph g = build_csc(Graph::from_edges(4, {}, {}));
  EXPECT_EQ(as_vector(g.in_offsets()), (std::vector<edge_t>{0, 0, 0, 0, 0}));
}

TEST(BuildCsc, SymmetricGraphMirrorsCsr) {
  const Graph g = build_csc(testing::triangle_edges().graph());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    EXPECT_EQ(g.in_degree(v), g.out_degree(v));
  }
  EXPECT_EQ(csc_triples(g), edge_triples(g));
}

TEST(BuildCsc, MatchesBruteForceOnRandomWeightedGraphs) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = build_csc(testing::random_edges(50, 300, seed).graph(true));
    EXPECT_EQ(csc_triples(g), edge_triples(g)) << "seed " << seed;
    edge_t in_sum = 0;
    edge_t out_sum = 0;
    for (vertex_t v = 0; v < g.num_vertices(); ++v) {
      in_sum += g.in_degree(v);
      out_sum += g.out_degree(v);
      EXPECT_LE(g.in_degree(v), g.num_edges());
    }
    EXPECT_EQ(in_sum, g.num_edges());
    EXPECT_EQ(out_sum, g.num_edges());
  }
}

TEST(BuildCsc, InEdgesAreInAscendingSourceOrder) {
  const Graph g = build_csc(testing::random_edges(30, 200, 7).graph());
  const auto off = g.in_offsets();
  const auto src = g.in_targets();
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    EXPECT_TRUE(std::is_sorted(src.begin() + static_cast<std::ptrdiff_t>(off[v]),
                               src.begin() + static_cast<std::ptrdiff_t>(off[v + 1])));
  }
}

TEST(Transpose, TwiceRecoversEdgeMultiset) {
  const Graph g = testing::random_edges(40, 250, 3).graph(true);
  const Graph t = transpose(g);
  auto flipped = edge_triples(t);
  for (auto& [a, b, w] : flipped) std::swap(a, b);
  std::sort(flipped.begin(), flipped.end());
  EXPECT_EQ(flipped, edge_triples(g));
  EXPECT_EQ(edge_triples(transpose(t)), edge_triples(g));
  EXPECT_TRUE(t.weighted());
}

TEST(Symmetrize, DropsSelfLoopsAndDuplicates) {
  const std::vector<vertex_t> s{0, 1, 0, 2, 2};
  const std::vector<vertex_t> t{1, 0, 1, 2, 0};
  const Graph g = symmetrize(Graph::from_edges(3, s, t));
  EXPECT_EQ(g.num_edges(), 4u);  // {0,1} and {0,2}, both directions
  EXPECT_TRUE(g.has_csc());
  EXPECT_FALSE(g.weighted());
  EXPECT_EQ(csc_triples(g), edge_triples(g));
}

}  // namespace
}  // namespace albsim
