#pragma once

#include <optional>
#include <string>

#include "lanegraph/graph2path.h"
#include "lanegraph/lane_graph.h"

namespace lanegraph {

struct SvgOptions {
  // Output pixels per meter.
  double scale = 12.0;
  double margin_px = 20.0;
  // Drawing extent; when unset the graph/path bounding box is used.
  std::optional<Box> extent;
  bool draw_vertices = true;
};

// Deterministic SVG: vertices as dots, directed edges as arrows, junctions as
// ringed markers (class "junction"), each path in a palette colour.
std::string render_svg(const LaneGraph& graph, const PathSet* paths = nullptr, const SvgOptions& options = {});

}  // namespace lanegraph
