#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lanegraph/lane_graph.h"
#include "lanegraph/path_repr.h"

namespace lanegraph {

inline constexpr std::size_t kDefaultPathCap = 256;

// Root-to-leaf paths of one lane graph.
struct PathSet {
  std::vector<Polyline> paths;
  std::uint64_t source_graph_digest = 0;
  // Some (root, leaf) pair had more paths than the cap allowed.
  bool truncated = false;

  std::size_t size() const { return paths.size(); }
  bool empty() const { return paths.empty(); }
};

struct RootsAndLeaves {
  std::vector<VertexId> roots;
  std::vector<VertexId> leaves;
};

// Roots have in-degree 0, leaves out-degree 0; both sorted by id. An isolated
// vertex is in both lists.
RootsAndLeaves roots_and_leaves(const LaneGraph& graph);

struct PathEnumeration {
  std::vector<std::vector<VertexId>> paths;
  bool truncated = false;
};

// Depth-first enumeration of every simple directed path root -> leaf, visiting
// successors in ascending id order and stopping after `cap` paths. Empty when
// the leaf is unreachable.
PathEnumeration find_paths(const LaneGraph& graph, VertexId root, VertexId leaf,
                           std::size_t cap = kDefaultPathCap);

// Vertex-id form of graph_to_paths: every path over every (root, leaf) pair,
// roots and leaves in id order. Single-vertex paths (isolated vertices) are
// omitted because a path needs two points.
PathEnumeration graph_to_vertex_paths(const LaneGraph& graph, std::size_t cap = kDefaultPathCap);

// Decomposes a valid acyclic lane graph into its root-to-leaf paths.
PathSet graph_to_paths(const LaneGraph& graph, std::size_t cap = kDefaultPathCap);

}  // namespace lanegraph
