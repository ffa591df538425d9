#pragma once

#include <vector>

#include "lanegraph/graph2path.h"
#include "lanegraph/lane_graph.h"
#include "lanegraph/path_repr.h"

namespace lanegraph {

struct MergeConfig {
  double discretize_step = 0.15;
  // 0 merges vertices whose quantized coordinates coincide; > 0 merges every
  // connected cluster of vertices within this distance of each other.
  double merge_radius = 0.0;
  double quantum = 1e-6;

  void check() const;
};

// Splits every polyline segment into segment_split_count() equal pieces,
// exactly as interpolate() splits graph edges. Endpoints are preserved.
std::vector<Point2> discretize_path(const Polyline& path, double step);

// Collapses overlapping vertices. Exact mode (radius 0) keys vertices by
// coordinates rounded to `quantum` and keeps the first member's position;
// radius mode clusters by union-find over a spatial hash and places the merged
// vertex at the cluster centroid. Output vertices get ids 0..n-1 in order of
// their first member. Duplicate edges and self-loops are dropped. Clusters are
// transitive, so a radius at or above the discretization step chains the
// consecutive vertices of a path together.
LaneGraph merge_vertices_by_overlap(const LaneGraph& graph, double radius, double quantum = 1e-6);

// Adds each discretized path as a chain of directed edges, then merges.
LaneGraph paths_to_graph(const PathSet& paths, const MergeConfig& config = {});

}  // namespace lanegraph
