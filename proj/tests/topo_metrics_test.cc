#include <gtest/gtest.h>

#include "lanegraph/errors.h"
#include "lanegraph/synth.h"
#include "lanegraph/topo_metrics.h"
#include "oracles/brute_force.h"
#include "oracles/fixtures.h"

namespace lanegraph {
namespace {

using testing::make_graph;

MetricConfig undirected() {
  MetricConfig c;
  c.directed = false;
  return c;
}

using Case = testing::MetricCase;

std::vector<Case> fixture_cases() { return testing::metric_cases(); }

TEST(SubgraphPr, Examples) {
  const LaneGraph chain = testing::straight_chain(10, 0.15);
  const Subgraph full{chain, 0};
  const PrecisionRecall same = subgraph_pr(full, full, 0.45);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);

  const PrecisionRecall empty = subgraph_pr(Subgraph{LaneGraph{}, 0}, full, 0.45);
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.recall, 0.0);

  const Subgraph half{testing::straight_chain(5, 0.15), 0};
  // Spread the GT so each predicted vertex has exactly one partner.
  const Subgraph sparse{testing::straight_chain(10, 0.5), 0};
  const Subgraph sparse_half{testing::straight_chain(5, 0.5), 0};
  const PrecisionRecall pr = subgraph_pr(sparse_half, sparse, 0.45);
  EXPECT_DOUBLE_EQ(pr.precision, 1.0);
  EXPECT_DOUBLE_EQ(pr.recall, 0.5);
  EXPECT_DOUBLE_EQ(subgraph_pr(half, full, 0.45).precision, 1.0);
  EXPECT_DOUBLE_EQ(subgraph_pr(half, full, 0.45).recall, 0.5);

  const PrecisionRecall both_empty = subgraph_pr(Subgraph{LaneGraph{}, 0}, Subgraph{LaneGraph{}, 0}, 0.45);
  EXPECT_EQ(both_empty.precision, 1.0);
  EXPECT_EQ(both_empty.recall, 1.0);
}

TEST(F1, Definition) {
  EXPECT_DOUBLE_EQ(f1_score(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(f1_score(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(f1_score(0.5, 1.0), 2.0 / 3.0);
}

TEST(Topo, SelfEvaluationIsPerfect) {
  for (const auto& f : testing::base_fixtures()) {
    for (const MetricConfig& c : {MetricConfig{}, undirected()}) {
      const TopoReport r = topo_metric(f.graph, f.graph, c);
      EXPECT_NEAR(r.precision, 1.0, 1e-9) << f.name;
      EXPECT_NEAR(r.recall, 1.0, 1e-9) << f.name;
      EXPECT_NEAR(r.f1, 1.0, 1e-9) << f.name;
      const TopoReport j = junction_topo_metric(f.graph, f.graph, c);
      EXPECT_NEAR(j.f1, 1.0, 1e-9) << f.name;
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig config;
    config.seed = seed;
    const LaneGraph g = generate_graph(config);
    EXPECT_NEAR(topo_metric(g, g).f1, 1.0, 1e-9);
    EXPECT_NEAR(topo_metric(g, g, undirected()).f1, 1.0, 1e-9);
    EXPECT_NEAR(junction_topo_metric(g, g).f1, 1.0, 1e-9);
  }
}

TEST(Topo, EmptyPrediction) {
  const TopoReport r = topo_metric(LaneGraph{}, testing::fork_fixture());
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_TRUE(r.flags.empty_graph_convention);
}

TEST(Topo, FarShiftScoresZero) {
  const LaneGraph chain = testing::chain_fixture();
  EXPECT_EQ(topo_metric(testing::translated(chain, {1.0, 0}), chain).f1, 0.0);
  for (const auto& f : testing::base_fixtures()) {
    const LaneGraph pred = testing::translated(f.graph, {10.0, 0});
    for (const MetricConfig& c : {MetricConfig{}, undirected()}) {
      EXPECT_EQ(topo_metric(pred, f.graph, c).f1, 0.0) << f.name;
      EXPECT_EQ(junction_topo_metric(pred, f.graph, c).recall, junctions(f.graph).empty() ? 1.0 : 0.0) << f.name;
    }
  }
}

TEST(Topo, ThresholdIsStrict) {
  const LaneGraph gt = testing::straight_chain(40, 0.15);
  const TopoReport at = topo_metric(testing::translated(gt, {0.45, 0}), gt);
  EXPECT_EQ(at.precision, 0.0);
  EXPECT_EQ(at.recall, 0.0);
  const TopoReport below = topo_metric(testing::translated(gt, {0.44, 0}), gt);
  EXPECT_GT(below.precision, 0.0);
  EXPECT_DOUBLE_EQ(below.precision, below.recall);
}

TEST(Topo, ShiftedChainMatchesOracle) {
  const LaneGraph gt = testing::straight_chain(20, 0.15);
  const LaneGraph pred = testing::translated(gt, {0.2, 0});
  const TopoReport r = topo_metric(pred, gt);
  const oracle::PR want = oracle::topo(pred, gt, 0.15, 0.45, 7.5, true);
  EXPECT_NEAR(r.precision, want.precision, 1e-9);
  EXPECT_NEAR(r.recall, want.recall, 1e-9);
  EXPECT_NEAR(r.precision, 1.0, 1e-9);
}

TEST(Topo, OracleEquivalenceOnFixtureSuite) {
  for (const Case& c : fixture_cases()) {
    for (bool directed : {true, false}) {
      MetricConfig config;
      config.directed = directed;
      const TopoReport r = topo_metric(c.pred, c.gt, config);
      const oracle::PR want = oracle::topo(c.pred, c.gt, 0.15, 0.45, 7.5, directed);
      EXPECT_NEAR(r.precision, want.precision, 1e-9) << c.name << " directed=" << directed;
      EXPECT_NEAR(r.recall, want.recall, 1e-9) << c.name << " directed=" << directed;

      const TopoReport j = junction_topo_metric(c.pred, c.gt, config);
      const oracle::PR jw = oracle::junction_topo(c.pred, c.gt, 0.15, 0.45, 7.5, directed);
      EXPECT_NEAR(j.precision, jw.precision, 1e-9) << c.name << " directed=" << directed;
      EXPECT_NEAR(j.recall, jw.recall, 1e-9) << c.name << " directed=" << directed;
    }
  }
}

TEST(Topo, OracleEquivalenceWithShortTraversal) {
  for (const Case& c : fixture_cases()) {
    MetricConfig config;
    config.traverse_dist = 1.0;
    const TopoReport r = topo_metric(c.pred, c.gt, config);
    const oracle::PR want = oracle::topo(c.pred, c.gt, 0.15, 0.45, 1.0, true);
    EXPECT_NEAR(r.precision, want.precision, 1e-9) << c.name;
    EXPECT_NEAR(r.recall, want.recall, 1e-9) << c.name;
  }
}

TEST(Topo, RelabelingChangesNothing) {
  for (const Case& c : fixture_cases()) {
    const TopoReport a = topo_metric(c.pred, c.gt);
    const TopoReport b = topo_metric(testing::relabeled(c.pred), testing::relabeled(c.gt));
    EXPECT_EQ(a.precision, b.precision) << c.name;
    EXPECT_EQ(a.recall, b.recall) << c.name;
    EXPECT_EQ(a.num_pairs, b.num_pairs) << c.name;
    const TopoReport ja = junction_topo_metric(c.pred, c.gt);
    const TopoReport jb = junction_topo_metric(testing::relabeled(c.pred), testing::relabeled(c.gt));
    EXPECT_EQ(ja.precision, jb.precision) << c.name;
    EXPECT_EQ(ja.recall, jb.recall) << c.name;
  }
}

TEST(Topo, UndirectedTraversalContainsDirected) {
  const LaneGraph g = interpolate(testing::double_diamond_fixture(), 0.15);
  const LaneGraph u = to_undirected(g);
  for (const Vertex& v : g.vertices()) {
    const Subgraph d = bounded_traverse(g, v.id, 7.5);
    const Subgraph s = bounded_traverse(u, v.id, 7.5);
    for (const Vertex& w : d.graph.vertices()) EXPECT_TRUE(s.graph.contains(w.id));
  }
}

TEST(Topo, ConfigChecked) {
  MetricConfig bad;
  bad.match_threshold = 0.1;
  EXPECT_THROW(topo_metric(testing::chain_fixture(), testing::chain_fixture(), bad), InvalidArgument);
  bad = MetricConfig{};
  bad.traverse_dist = 0;
  EXPECT_THROW(topo_metric(testing::chain_fixture(), testing::chain_fixture(), bad), InvalidArgument);
}

TEST(Topo, ReportEchoesConfigAndCounts) {
  const TopoReport r = topo_metric(testing::chain_fixture(), testing::chain_fixture());
  EXPECT_EQ(r.metric, "topo");
  EXPECT_EQ(r.num_gt_vertices, 41u);
  EXPECT_EQ(r.num_pred_vertices, 41u);
  EXPECT_EQ(r.num_pairs, 41u);
  EXPECT_EQ(r.per_anchor.size(), 41u);
  EXPECT_EQ(r.config.match_threshold, 0.45);
}

TEST(JunctionTopo, MissingBranch) {
  const LaneGraph gt = testing::fork_fixture();
  const LaneGraph pred = make_graph({{0, 0}, {0, 3}, {-1.5, 6}}, {{0, 1}, {1, 2}});
  const TopoReport r = junction_topo_metric(pred, gt);
  ASSERT_EQ(r.per_anchor.size(), 1u);
  EXPECT_LT(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_EQ(r.metric, "junction_topo");
}

TEST(JunctionTopo, ChainIsDegenerate) {
  const TopoReport r = junction_topo_metric(testing::chain_fixture(), testing::chain_fixture());
  EXPECT_TRUE(r.flags.degenerate);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_TRUE(r.per_anchor.empty());
}

TEST(JunctionTopo, UnmatchedJunctionUsesEmptySubgraph) {
  const LaneGraph gt = testing::fork_fixture();
  const LaneGraph pred = make_graph({{10, 0}, {10, 3}}, {{0, 1}});
  const TopoReport r = junction_topo_metric(pred, gt);
  ASSERT_EQ(r.per_anchor.size(), 1u);
  EXPECT_FALSE(r.per_anchor[0].pred_anchor.has_value());
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
}

TEST(Topo, CyclicPredictionIsScored) {
  const LaneGraph gt = testing::straight_chain(5, 0.15);
  LaneGraph pred = testing::straight_chain(5, 0.15);
  pred.add_edge(4, 0);
  const TopoReport r = topo_metric(pred, gt);
  EXPECT_NEAR(r.recall, 1.0, 1e-9);
  EXPECT_GT(r.precision, 0.0);
}

}  // namespace
}  // namespace lanegraph
