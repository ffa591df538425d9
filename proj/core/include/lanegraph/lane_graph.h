#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lanegraph/geometry.h"

namespace lanegraph {

using VertexId = std::int64_t;

struct Vertex {
  VertexId id = 0;
  Point2 pos;
};

struct Edge {
  VertexId from = 0;
  VertexId to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed lane graph: positioned vertices plus directed edges.
//
// The container stores whatever it is given (validate() reports problems);
// algorithms that need a well-formed graph check it on entry. Vertex ids are
// opaque; geometry carries the meaning.
class LaneGraph {
 public:
  LaneGraph() = default;

  // Appends a vertex with the next unused id.
  VertexId add_vertex(Point2 pos);
  // Appends a vertex with an explicit id. Duplicates are stored and reported
  // by validate(); lookups resolve to the first occurrence.
  void add_vertex(VertexId id, Point2 pos);
  void add_edge(VertexId from, VertexId to);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  bool contains(VertexId id) const { return index_.contains(id); }
  std::optional<std::size_t> index_of(VertexId id) const;
  // Throws NotFoundError for unknown ids.
  Point2 position(VertexId id) const;

  // One past the largest id in use (0 for an empty graph).
  VertexId next_id() const { return next_id_; }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<VertexId, std::size_t> index_;
  VertexId next_id_ = 0;
};

enum class IssueKind {
  kDuplicateVertexId,
  kDanglingEdge,
  kSelfLoop,
  kDuplicateEdge,
  kDirectedCycle,
};

std::string to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  std::vector<VertexId> ids;
};

struct ValidationReport {
  bool is_valid = true;
  std::vector<ValidationIssue> issues;

  bool has(IssueKind kind) const;
  // True when the only problems (if any) are directed cycles.
  bool structurally_valid() const;
  std::string summary() const;
};

ValidationReport validate(const LaneGraph& graph);

// Throws ValidationError unless the graph is valid. With allow_cycles the
// directed-cycle check is skipped (used for undirected views and for
// predictions that were merged into cycles).
void require_valid(const LaneGraph& graph, bool allow_cycles = false);

// Compressed adjacency over vertex indices (not ids). Successor and
// predecessor lists are sorted by vertex id.
struct Adjacency {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;

  std::size_t in_degree(std::size_t i) const { return in[i].size(); }
  std::size_t out_degree(std::size_t i) const { return out[i].size(); }
};

// Requires every edge endpoint to exist (throws ValidationError otherwise).
Adjacency build_adjacency(const LaneGraph& graph);

// Splits every edge longer than `spacing` into segment_split_count() equal
// collinear pieces. Original vertices keep their ids and order; inserted
// vertices get fresh ids appended in edge order.
LaneGraph interpolate(const LaneGraph& graph, double spacing);

// Vertices with in-degree >= 2 or out-degree >= 2, in storage order.
std::vector<VertexId> junctions(const LaneGraph& graph);

// Same vertices; every edge (u, v) is present in both directions.
LaneGraph to_undirected(const LaneGraph& graph);

struct Subgraph {
  LaneGraph graph;
  VertexId anchor = 0;
};

// Dijkstra along outgoing edges from `anchor`. A vertex is kept iff its
// shortest along-graph distance is strictly below max_dist (1e-9 tolerance
// on the bound). The anchor is always kept; induced edges are kept.
Subgraph bounded_traverse(const LaneGraph& graph, VertexId anchor, double max_dist);

// Index-level variant used by the metrics: returns the kept vertex indices
// in ascending order.
std::vector<std::size_t> bounded_traverse_indices(const LaneGraph& graph, const Adjacency& adj,
                                                  std::size_t anchor, double max_dist);

// Graph isomorphism up to vertex ids for graphs whose vertices have distinct
// positions: vertices are identified by coordinates rounded to `quantum`.
bool geometrically_equal(const LaneGraph& a, const LaneGraph& b, double quantum = 1e-6);

// Stable 64-bit FNV-1a digest over ids, coordinate bits and edges.
std::uint64_t graph_digest(const LaneGraph& graph);

}  // namespace lanegraph
