#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lanegraph/graph2path.h"
#include "lanegraph/lane_graph.h"
#include "lanegraph/path_repr.h"
#include "lanegraph/synth.h"
#include "lanegraph/topo_metrics.h"

namespace lanegraph::io {

inline constexpr const char* kGraphSchema = "lanegraph.graph/1";
inline constexpr const char* kPathsSchema = "lanegraph.paths/1";

using Metadata = std::map<std::string, std::string>;

struct GraphDocument {
  LaneGraph graph;
  Metadata metadata;
};

enum class PathKind { kPolyline, kBezier };

struct PathEntry {
  PathKind kind = PathKind::kPolyline;
  std::vector<Point2> points;
};

struct PathDocument {
  std::vector<PathEntry> paths;
  Metadata metadata;
};

// Numbers are written in shortest round-trip form, so load(save(x)) == x
// bit for bit.
std::string save_graph(const GraphDocument& doc);
// Throws ParseError naming the offending field, e.g. "vertices[2].x".
GraphDocument load_graph(const std::string& bytes);

std::string save_paths(const PathDocument& doc);
PathDocument load_paths(const std::string& bytes);

// PathSet <-> document. Decomposition flags travel in the metadata
// ("truncated", "source_graph_digest").
PathDocument to_document(const PathSet& paths);
// Bezier entries are sampled at `bezier_samples` uniform parameters.
PathSet to_path_set(const PathDocument& doc, std::size_t bezier_samples = 100);

// Generator configuration; absent keys keep their defaults. The seed is not
// part of the file.
SynthConfig load_synth_config(const std::string& bytes);
std::string save_synth_config(const SynthConfig& config);

std::string report_to_json(const TopoReport& report, int indent = 2);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace lanegraph::io
