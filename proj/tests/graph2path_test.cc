#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lanegraph/errors.h"
#include "lanegraph/graph2path.h"
#include "lanegraph/random.h"
#include "lanegraph/synth.h"
#include "oracles/brute_force.h"
#include "oracles/fixtures.h"

namespace lanegraph {
namespace {

using testing::make_graph;
using Ids = std::vector<VertexId>;

// Random DAG: edges only go from lower to higher index.
LaneGraph random_dag(std::uint64_t seed, std::size_t n, double edge_prob) {
  CounterRng rng(seed);
  LaneGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex({rng.uniform(-15, 15), rng.uniform(-30, 30)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_prob)) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

TEST(RootsAndLeaves, Examples) {
  const RootsAndLeaves chain = roots_and_leaves(testing::chain_fixture());
  EXPECT_EQ(chain.roots, Ids{0});
  EXPECT_EQ(chain.leaves, Ids{2});
  const RootsAndLeaves fork = roots_and_leaves(make_graph({{0, 0}, {-1, 1}, {1, 1}}, {{0, 1}, {0, 2}}));
  EXPECT_EQ(fork.roots, Ids{0});
  EXPECT_EQ(fork.leaves, (Ids{1, 2}));
  const RootsAndLeaves merge = roots_and_leaves(make_graph({{-1, 0}, {1, 0}, {0, 1}}, {{0, 2}, {1, 2}}));
  EXPECT_EQ(merge.roots, (Ids{0, 1}));
  EXPECT_EQ(merge.leaves, Ids{2});
  const RootsAndLeaves isolated = roots_and_leaves(make_graph({{0, 0}}, {}));
  EXPECT_EQ(isolated.roots, Ids{0});
  EXPECT_EQ(isolated.leaves, Ids{0});
}

TEST(FindPaths, Examples) {
  EXPECT_EQ(find_paths(testing::chain_fixture(), 0, 2).paths, std::vector<Ids>{(Ids{0, 1, 2})});
  const LaneGraph two = make_graph({{0, 0}, {0, 1}, {5, 0}, {5, 1}}, {{0, 1}, {2, 3}});
  EXPECT_TRUE(find_paths(two, 0, 3).paths.empty());
  const PathEnumeration diamond = find_paths(testing::diamond_fixture(), 0, 3);
  EXPECT_EQ(diamond.paths, (std::vector<Ids>{{0, 1, 3}, {0, 2, 3}}));
  EXPECT_FALSE(diamond.truncated);
}

TEST(FindPaths, CapTruncates) {
  const PathEnumeration one = find_paths(testing::diamond_fixture(), 0, 3, 1);
  EXPECT_EQ(one.paths, std::vector<Ids>{(Ids{0, 1, 3})});
  EXPECT_TRUE(one.truncated);
  const PathEnumeration two = find_paths(testing::diamond_fixture(), 0, 3, 2);
  EXPECT_FALSE(two.truncated);
}

TEST(GraphToPaths, Examples) {
  EXPECT_EQ(graph_to_vertex_paths(testing::fork_fixture()).paths, (std::vector<Ids>{{0, 1, 2}, {0, 1, 3}}));
  EXPECT_EQ(graph_to_vertex_paths(testing::merge_fixture()).paths, (std::vector<Ids>{{0, 2, 3}, {1, 2, 3}}));
  const PathSet dd = graph_to_paths(testing::double_diamond_fixture());
  EXPECT_EQ(dd.size(), 4u);
  EXPECT_EQ(dd.size(), oracle::all_root_leaf_paths(testing::double_diamond_fixture()).size());
  EXPECT_EQ(dd.source_graph_digest, graph_digest(testing::double_diamond_fixture()));
}

TEST(GraphToPaths, PolylinesFollowVertexPositions) {
  const LaneGraph g = testing::fork_fixture();
  const PathSet set = graph_to_paths(g);
  const PathEnumeration ids = graph_to_vertex_paths(g);
  ASSERT_EQ(set.size(), ids.paths.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    ASSERT_EQ(set.paths[i].size(), ids.paths[i].size());
    for (std::size_t k = 0; k < ids.paths[i].size(); ++k) EXPECT_EQ(set.paths[i][k], g.position(ids.paths[i][k]));
  }
}

TEST(GraphToPaths, Errors) {
  EXPECT_THROW(graph_to_paths(LaneGraph{}), InvalidArgument);
  EXPECT_THROW(graph_to_paths(make_graph({{0, 0}, {0, 1}}, {{0, 1}, {1, 0}})), ValidationError);
}

TEST(GraphToPaths, IsolatedVertexYieldsNoPath) {
  const LaneGraph g = make_graph({{0, 0}, {0, 1}, {9, 9}}, {{0, 1}});
  EXPECT_EQ(graph_to_paths(g).size(), 1u);
}

TEST(GraphToPaths, ReportsTruncation) {
  // Ladder of 10 diamonds: 2^10 paths between one root and one leaf.
  LaneGraph g;
  VertexId prev = g.add_vertex({0, 0});
  for (int i = 0; i < 10; ++i) {
    const VertexId l = g.add_vertex({-1, 2.0 * i + 1});
    const VertexId r = g.add_vertex({1, 2.0 * i + 1});
    const VertexId m = g.add_vertex({0, 2.0 * i + 2});
    g.add_edge(prev, l);
    g.add_edge(prev, r);
    g.add_edge(l, m);
    g.add_edge(r, m);
    prev = m;
  }
  const PathSet set = graph_to_paths(g);
  EXPECT_TRUE(set.truncated);
  EXPECT_EQ(set.size(), kDefaultPathCap);
  EXPECT_FALSE(graph_to_paths(g, 1024).truncated);
}

class RandomDag : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomDag, PropertiesHold) {
  const std::uint64_t seed = GetParam();
  CounterRng sizes(seed, 1);
  const LaneGraph g = random_dag(seed, 5 + sizes.below(36), 0.08);
  const PathEnumeration result = graph_to_vertex_paths(g, 100000);
  ASSERT_FALSE(result.truncated);

  EXPECT_EQ(result.paths, oracle::all_root_leaf_paths(g));

  const Adjacency adj = build_adjacency(g);
  std::set<std::pair<VertexId, VertexId>> covered;
  std::set<Ids> distinct;
  for (const Ids& p : result.paths) {
    EXPECT_EQ(std::set<VertexId>(p.begin(), p.end()).size(), p.size());
    EXPECT_EQ(adj.in_degree(*g.index_of(p.front())), 0u);
    EXPECT_EQ(adj.out_degree(*g.index_of(p.back())), 0u);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) covered.emplace(p[k], p[k + 1]);
    distinct.insert(p);
  }
  EXPECT_EQ(distinct.size(), result.paths.size());
  for (const Edge& e : g.edges()) EXPECT_TRUE(covered.contains({e.from, e.to})) << e.from << "->" << e.to;

  EXPECT_EQ(graph_to_vertex_paths(g, 100000).paths, result.paths);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomDag, ::testing::Range<std::uint64_t>(0, 60));

TEST(GraphToPaths, SyntheticGraphsCoverEveryEdge) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SynthConfig config;
    config.seed = seed;
    const LaneGraph g = generate_graph(config);
    const PathEnumeration result = graph_to_vertex_paths(g);
    ASSERT_FALSE(result.truncated);
    std::set<std::pair<VertexId, VertexId>> covered;
    for (const Ids& p : result.paths)
      for (std::size_t k = 0; k + 1 < p.size(); ++k) covered.emplace(p[k], p[k + 1]);
    EXPECT_EQ(covered.size(), g.num_edges()) << seed;
  }
}

}  // namespace
}  // namespace lanegraph
