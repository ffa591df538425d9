#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lanegraph/lane_graph.h"

namespace lanegraph {

struct MetricConfig {
  double interpolation_spacing = 0.15;
  // Vertices closer than this (strictly) are candidate matches.
  double match_threshold = 0.45;
  // Subgraphs keep vertices strictly closer than this along the graph.
  double traverse_dist = 7.5;
  bool directed = true;

  void check() const;
};

struct VertexPair {
  VertexId pred = 0;
  VertexId gt = 0;
  double distance = 0.0;
};

struct MatchResult {
  std::vector<VertexPair> pairs;
  std::vector<VertexId> unmatched_pred;
  std::vector<VertexId> unmatched_gt;
};

// Maximum-cardinality one-to-one matching between the vertex sets, minimum
// total distance among those. Both graphs are used as given (no interpolation).
MatchResult match_vertices(const LaneGraph& pred, const LaneGraph& gt, double threshold);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Vertex-level precision and recall between two subgraphs. An empty
// prediction scores precision 0 (1 if the ground truth is empty too); an empty
// ground truth scores recall 1.
PrecisionRecall subgraph_pr(const Subgraph& pred_sub, const Subgraph& gt_sub, double threshold);
PrecisionRecall subgraph_pr(std::span<const Point2> pred, std::span<const Point2> gt, double threshold);

struct AnchorScore {
  VertexId gt_anchor = 0;
  std::optional<VertexId> pred_anchor;
  double precision = 0.0;
  double recall = 0.0;
};

struct ReportFlags {
  // One of the inputs came from a truncated path decomposition.
  bool truncated_input = false;
  // An empty-graph convention decided the score.
  bool empty_graph_convention = false;
  // Junction metric on a ground truth without junctions.
  bool degenerate = false;
};

struct TopoReport {
  std::string metric;  // "topo" or "junction_topo"
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<AnchorScore> per_anchor;
  MetricConfig config;
  ReportFlags flags;
  std::size_t num_pred_vertices = 0;
  std::size_t num_gt_vertices = 0;
  std::size_t num_pairs = 0;
  std::map<std::string, std::string> metadata;
};

double f1_score(double precision, double recall);

// Whole-graph TOPO precision/recall. Both graphs are interpolated to the
// configured spacing; in undirected mode both are symmetrized first.
TopoReport topo_metric(const LaneGraph& pred, const LaneGraph& gt, const MetricConfig& config = {});

// Precision/recall averaged over subgraphs traversed from the ground-truth
// junctions. The predicted anchor is the vertex globally matched to the
// junction, else the nearest predicted vertex within the threshold.
TopoReport junction_topo_metric(const LaneGraph& pred, const LaneGraph& gt, const MetricConfig& config = {});

}  // namespace lanegraph
