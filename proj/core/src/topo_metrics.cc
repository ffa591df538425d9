#include "lanegraph/topo_metrics.h"

#include <algorithm>
#include <limits>

#include "lanegraph/errors.h"
#include "lanegraph/matching.h"

namespace lanegraph {
namespace {

std::vector<Point2> positions(const LaneGraph& graph) {
  std::vector<Point2> pts;
  pts.reserve(graph.num_vertices());
  for (const Vertex& v : graph.vertices()) pts.push_back(v.pos);
  return pts;
}

// Both graphs after interpolation (and symmetrization in undirected mode),
// plus everything the per-anchor loops need.
struct PreparedPair {
  LaneGraph pred;
  LaneGraph gt;
  Adjacency pred_adj;
  Adjacency gt_adj;
  std::vector<Point2> pred_pts;
  std::vector<Point2> gt_pts;
  // Junctions of the directed, interpolated ground truth (vertex indices).
  std::vector<std::size_t> gt_junctions;
  std::vector<IndexPair> pairs;
};

PreparedPair prepare(const LaneGraph& pred, const LaneGraph& gt, const MetricConfig& config) {
  config.check();
  require_valid(pred, /*allow_cycles=*/true);
  require_valid(gt, /*allow_cycles=*/true);
  PreparedPair p;
  p.pred = interpolate(pred, config.interpolation_spacing);
  p.gt = interpolate(gt, config.interpolation_spacing);
  for (VertexId id : junctions(p.gt)) p.gt_junctions.push_back(*p.gt.index_of(id));
  if (!config.directed) {
    p.pred = to_undirected(p.pred);
    p.gt = to_undirected(p.gt);
  }
  p.pred_adj = build_adjacency(p.pred);
  p.gt_adj = build_adjacency(p.gt);
  p.pred_pts = positions(p.pred);
  p.gt_pts = positions(p.gt);
  p.pairs = min_cost_max_matching(p.pred_pts, p.gt_pts, config.match_threshold);
  return p;
}

std::vector<Point2> gather(const std::vector<Point2>& pts, const std::vector<std::size_t>& idx) {
  std::vector<Point2> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(pts[i]);
  return out;
}

bool position_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Orders the per-anchor scores by ground-truth anchor position and sums them
// in that order, so the totals do not depend on vertex ids or storage order.
PrecisionRecall ordered_sums(std::vector<AnchorScore>& scores, const LaneGraph& gt) {
  std::stable_sort(scores.begin(), scores.end(), [&gt](const AnchorScore& a, const AnchorScore& b) {
    return position_less(gt.position(a.gt_anchor), gt.position(b.gt_anchor));
  });
  PrecisionRecall sum;
  for (const AnchorScore& s : scores) {
    sum.precision += s.precision;
    sum.recall += s.recall;
  }
  return sum;
}

TopoReport make_report(std::string metric, const MetricConfig& config, const PreparedPair& p) {
  TopoReport r;
  r.metric = std::move(metric);
  r.config = config;
  r.num_pred_vertices = p.pred.num_vertices();
  r.num_gt_vertices = p.gt.num_vertices();
  r.num_pairs = p.pairs.size();
  return r;
}

}  // namespace

void MetricConfig::check() const {
  if (!(interpolation_spacing > 0.0) || !(match_threshold > 0.0) || !(traverse_dist > 0.0))
    throw InvalidArgument("metric distances must be positive");
  if (match_threshold < interpolation_spacing)
    throw InvalidArgument("match_threshold must not be below interpolation_spacing");
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

MatchResult match_vertices(const LaneGraph& pred, const LaneGraph& gt, double threshold) {
  const std::vector<Point2> pp = positions(pred);
  const std::vector<Point2> gp = positions(gt);
  const std::vector<IndexPair> pairs = min_cost_max_matching(pp, gp, threshold);
  MatchResult result;
  std::vector<char> used_pred(pp.size(), 0);
  std::vector<char> used_gt(gp.size(), 0);
  for (const IndexPair& m : pairs) {
    result.pairs.push_back({pred.vertices()[m.a].id, gt.vertices()[m.b].id, m.distance});
    used_pred[m.a] = 1;
    used_gt[m.b] = 1;
  }
  for (std::size_t i = 0; i < pp.size(); ++i)
    if (!used_pred[i]) result.unmatched_pred.push_back(pred.vertices()[i].id);
  for (std::size_t j = 0; j < gp.size(); ++j)
    if (!used_gt[j]) result.unmatched_gt.push_back(gt.vertices()[j].id);
  return result;
}

PrecisionRecall subgraph_pr(std::span<const Point2> pred, std::span<const Point2> gt, double threshold) {
  if (pred.empty()) return {gt.empty() ? 1.0 : 0.0, gt.empty() ? 1.0 : 0.0};
  if (gt.empty()) return {0.0, 1.0};
  const double matched = static_cast<double>(max_matching_size(pred, gt, threshold));
  return {matched / static_cast<double>(pred.size()), matched / static_cast<double>(gt.size())};
}

PrecisionRecall subgraph_pr(const Subgraph& pred_sub, const Subgraph& gt_sub, double threshold) {
  return subgraph_pr(positions(pred_sub.graph), positions(gt_sub.graph), threshold);
}

TopoReport topo_metric(const LaneGraph& pred, const LaneGraph& gt, const MetricConfig& config) {
  const PreparedPair p = prepare(pred, gt, config);
  TopoReport report = make_report("topo", config, p);

  for (const IndexPair& m : p.pairs) {
    const auto pred_sub = bounded_traverse_indices(p.pred, p.pred_adj, m.a, config.traverse_dist);
    const auto gt_sub = bounded_traverse_indices(p.gt, p.gt_adj, m.b, config.traverse_dist);
    const PrecisionRecall pr =
        subgraph_pr(gather(p.pred_pts, pred_sub), gather(p.gt_pts, gt_sub), config.match_threshold);
    report.per_anchor.push_back(
        {p.gt.vertices()[m.b].id, p.pred.vertices()[m.a].id, pr.precision, pr.recall});
  }
  const PrecisionRecall sums = ordered_sums(report.per_anchor, p.gt);
  const double sum_pre = sums.precision;
  const double sum_rec = sums.recall;

  const std::size_t nv_pred = p.pred.num_vertices();
  const std::size_t nv_gt = p.gt.num_vertices();
  if (nv_pred == 0 || nv_gt == 0) report.flags.empty_graph_convention = true;
  if (nv_pred > 0) {
    report.precision = sum_pre / static_cast<double>(nv_pred);
  } else {
    report.precision = nv_gt == 0 ? 1.0 : 0.0;
  }
  report.recall = nv_gt > 0 ? sum_rec / static_cast<double>(nv_gt) : 1.0;
  if (nv_pred == 0 && nv_gt > 0) report.recall = 0.0;
  report.f1 = f1_score(report.precision, report.recall);
  return report;
}

TopoReport junction_topo_metric(const LaneGraph& pred, const LaneGraph& gt, const MetricConfig& config) {
  const PreparedPair p = prepare(pred, gt, config);
  TopoReport report = make_report("junction_topo", config, p);

  if (p.gt_junctions.empty()) {
    report.flags.degenerate = true;
    report.precision = 1.0;
    report.recall = 1.0;
    report.f1 = 1.0;
    return report;
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> partner_of_gt(p.gt_pts.size(), kNone);
  for (const IndexPair& m : p.pairs) partner_of_gt[m.b] = m.a;

  for (std::size_t j : p.gt_junctions) {
    std::size_t anchor = partner_of_gt[j];
    if (anchor == kNone) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < p.pred_pts.size(); ++i) {
        const double d = distance(p.pred_pts[i], p.gt_pts[j]);
        if (!is_candidate_distance(d, config.match_threshold)) continue;
        if (d < best || (d == best && position_less(p.pred_pts[i], p.pred_pts[anchor]))) {
          best = d;
          anchor = i;
        }
      }
    }
    const auto gt_sub = bounded_traverse_indices(p.gt, p.gt_adj, j, config.traverse_dist);
    std::vector<Point2> pred_sub_pts;
    AnchorScore score;
    score.gt_anchor = p.gt.vertices()[j].id;
    if (anchor != kNone) {
      pred_sub_pts = gather(p.pred_pts, bounded_traverse_indices(p.pred, p.pred_adj, anchor, config.traverse_dist));
      score.pred_anchor = p.pred.vertices()[anchor].id;
    }
    const PrecisionRecall pr = subgraph_pr(pred_sub_pts, gather(p.gt_pts, gt_sub), config.match_threshold);
    score.precision = pr.precision;
    score.recall = pr.recall;
    report.per_anchor.push_back(score);
  }
  if (p.pred.num_vertices() == 0) report.flags.empty_graph_convention = true;
  const PrecisionRecall sums = ordered_sums(report.per_anchor, p.gt);
  const double n = static_cast<double>(p.gt_junctions.size());
  report.precision = sums.precision / n;
  report.recall = sums.recall / n;
  report.f1 = f1_score(report.precision, report.recall);
  return report;
}

}  // namespace lanegraph
