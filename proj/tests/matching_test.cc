#include <gtest/gtest.h>

#include "lanegraph/matching.h"
#include "lanegraph/random.h"
#include "lanegraph/topo_metrics.h"
#include "oracles/brute_force.h"
#include "oracles/fixtures.h"

namespace lanegraph {
namespace {

oracle::QuantizedCost quantized_total(const std::vector<IndexPair>& pairs) {
  oracle::QuantizedCost total;
  for (const IndexPair& p : pairs) {
    const oracle::QuantizedCost q = oracle::quantize(p.distance);
    total.micrometres += q.micrometres;
    total.squared += q.squared;
  }
  return total;
}

TEST(Candidate, StrictThreshold) {
  EXPECT_TRUE(is_candidate_distance(0.3, 0.45));
  EXPECT_FALSE(is_candidate_distance(0.45, 0.45));
  EXPECT_FALSE(is_candidate_distance(0.45 + 1e-12, 0.45));
  EXPECT_FALSE(is_candidate_distance(0.45 - 1e-12, 0.45));
  EXPECT_TRUE(is_candidate_distance(0.44, 0.45));
}

TEST(MatchVertices, Examples) {
  const LaneGraph pred = testing::make_graph({{0, 0}}, {});
  const LaneGraph near = testing::make_graph({{0, 0.3}}, {});
  const MatchResult m = match_vertices(pred, near, 0.45);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_NEAR(m.pairs[0].distance, 0.3, 1e-15);

  const LaneGraph far = testing::make_graph({{0, 0.45}}, {});
  const MatchResult none = match_vertices(pred, far, 0.45);
  EXPECT_TRUE(none.pairs.empty());
  EXPECT_EQ(none.unmatched_pred.size(), 1u);
  EXPECT_EQ(none.unmatched_gt.size(), 1u);

  EXPECT_TRUE(match_vertices(LaneGraph{}, LaneGraph{}, 0.45).pairs.empty());
}

TEST(MatchVertices, MaximumCardinalityBeatsGreedy) {
  // p0 sits between g0 and g1 but is nearer g1; p1 only reaches g1.
  const LaneGraph pred = testing::make_graph({{0.25, 0}, {0.6, 0}}, {});
  const LaneGraph gt = testing::make_graph({{0, 0}, {0.4, 0}}, {});
  const MatchResult m = match_vertices(pred, gt, 0.45);
  ASSERT_EQ(m.pairs.size(), 2u);
  EXPECT_EQ(m.pairs[0].pred, 0);
  EXPECT_EQ(m.pairs[0].gt, 0);
  EXPECT_EQ(m.pairs[1].pred, 1);
  EXPECT_EQ(m.pairs[1].gt, 1);
  std::vector<Point2> a{{0.25, 0}, {0.6, 0}}, b{{0, 0}, {0.4, 0}};
  EXPECT_EQ(oracle::best_matching(a, b, 0.45).pairs.size(), 2u);
}

TEST(MinCostMaxMatching, EqualTotalsPreferEvenDistances) {
  // Pairing i with i costs 0.2 each; shifting by one pairs 0.05 with 0.35.
  std::vector<Point2> a, b;
  for (int i = 0; i < 6; ++i) {
    a.push_back({0.2 + 0.15 * i, 0});
    b.push_back({0.15 * i, 0});
  }
  const auto got = min_cost_max_matching(a, b, 0.45);
  ASSERT_EQ(got.size(), 6u);
  for (const IndexPair& p : got) EXPECT_EQ(p.a, p.b);
}

TEST(MinCostMaxMatching, AgreesWithExhaustiveSearch) {
  CounterRng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point2> a, b;
    const std::size_t na = 1 + rng.below(8);
    const std::size_t nb = 1 + rng.below(8);
    for (std::size_t i = 0; i < na; ++i) a.push_back({rng.uniform(0, 1.5), rng.uniform(0, 1.5)});
    for (std::size_t i = 0; i < nb; ++i) b.push_back({rng.uniform(0, 1.5), rng.uniform(0, 1.5)});
    const auto got = min_cost_max_matching(a, b, 0.45);
    const oracle::Matching want = oracle::best_matching(a, b, 0.45);
    ASSERT_EQ(got.size(), want.pairs.size()) << trial;
    std::vector<bool> used_a(na), used_b(nb);
    for (const IndexPair& p : got) {
      EXPECT_FALSE(used_a[p.a]);
      EXPECT_FALSE(used_b[p.b]);
      used_a[p.a] = used_b[p.b] = true;
      EXPECT_LT(p.distance, 0.45);
    }
    EXPECT_EQ(quantized_total(got), want.quantized) << trial;
    EXPECT_EQ(max_matching_size(a, b, 0.45), want.pairs.size());
  }
}

TEST(MinCostMaxMatching, LargeInstancesAgreeWithDenseAssignment) {
  CounterRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2> a, b;
    for (int i = 0; i < 60; ++i) a.push_back({rng.uniform(0, 3), rng.uniform(0, 3)});
    for (int i = 0; i < 50; ++i) b.push_back({rng.uniform(0, 3), rng.uniform(0, 3)});
    const auto got = min_cost_max_matching(a, b, 0.45);
    const oracle::Matching want = oracle::best_matching(a, b, 0.45);
    ASSERT_EQ(got.size(), want.pairs.size());
    EXPECT_EQ(quantized_total(got), want.quantized);
  }
}

TEST(CandidatePairs, MatchesBruteForce) {
  CounterRng rng(3);
  std::vector<Point2> a, b;
  for (int i = 0; i < 200; ++i) a.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
  for (int i = 0; i < 200; ++i) b.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
  const auto pairs = candidate_pairs(a, b, 0.45);
  std::size_t expected = 0;
  for (const Point2& p : a)
    for (const Point2& q : b)
      if (distance(p, q) < 0.45) ++expected;
  EXPECT_EQ(pairs.size(), expected);
  for (std::size_t i = 1; i < pairs.size(); ++i)
    EXPECT_TRUE(pairs[i - 1].a < pairs[i].a || (pairs[i - 1].a == pairs[i].a && pairs[i - 1].b < pairs[i].b));
}

TEST(MatchVertices, DependsOnGeometryOnly) {
  const LaneGraph gt = interpolate(testing::double_diamond_fixture(), 0.15);
  const LaneGraph pred = interpolate(testing::jittered(testing::double_diamond_fixture(), 0.1, 5), 0.15);
  const MatchResult a = match_vertices(pred, gt, 0.45);
  const MatchResult b = match_vertices(testing::relabeled(pred), testing::relabeled(gt), 0.45);
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  auto positions = [](const MatchResult& m, const LaneGraph& p, const LaneGraph& g) {
    std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> out;
    for (const VertexPair& v : m.pairs) {
      const Point2 x = p.position(v.pred), y = g.position(v.gt);
      out.push_back({{x.x, x.y}, {y.x, y.y}});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(positions(a, pred, gt), positions(b, testing::relabeled(pred), testing::relabeled(gt)));
}

}  // namespace
}  // namespace lanegraph
