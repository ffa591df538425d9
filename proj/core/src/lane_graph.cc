#include "lanegraph/lane_graph.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "lanegraph/errors.h"

namespace lanegraph {
namespace {

constexpr double kBoundEps = 1e-9;

}  // namespace

VertexId LaneGraph::add_vertex(Point2 pos) {
  const VertexId id = next_id_;
  add_vertex(id, pos);
  return id;
}

void LaneGraph::add_vertex(VertexId id, Point2 pos) {
  index_.try_emplace(id, vertices_.size());
  vertices_.push_back({id, pos});
  next_id_ = std::max(next_id_, id + 1);
}

void LaneGraph::add_edge(VertexId from, VertexId to) { edges_.push_back({from, to}); }

std::optional<std::size_t> LaneGraph::index_of(VertexId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Point2 LaneGraph::position(VertexId id) const {
  const auto idx = index_of(id);
  if (!idx) throw NotFoundError("vertex " + std::to_string(id) + " not in graph");
  return vertices_[*idx].pos;
}

std::string to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::kDuplicateVertexId: return "duplicate-vertex-id";
    case IssueKind::kDanglingEdge: return "dangling-edge";
    case IssueKind::kSelfLoop: return "self-loop";
    case IssueKind::kDuplicateEdge: return "duplicate-edge";
    case IssueKind::kDirectedCycle: return "directed-cycle";
  }
  return "unknown";
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

bool ValidationReport::structurally_valid() const {
  return std::all_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.kind == IssueKind::kDirectedCycle;
  });
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << to_string(issues[i].kind) << " [";
    for (std::size_t k = 0; k < issues[i].ids.size(); ++k) {
      if (k) os << ", ";
      os << issues[i].ids[k];
    }
    os << "]";
  }
  return os.str();
}

ValidationReport validate(const LaneGraph& graph) {
  ValidationReport report;
  auto add = [&report](IssueKind kind, std::vector<VertexId> ids) {
    report.issues.push_back({kind, std::move(ids)});
  };

  std::set<VertexId> seen;
  for (const Vertex& v : graph.vertices()) {
    if (!seen.insert(v.id).second) add(IssueKind::kDuplicateVertexId, {v.id});
  }

  std::set<std::pair<VertexId, VertexId>> seen_edges;
  bool dangling = false;
  for (const Edge& e : graph.edges()) {
    if (!graph.contains(e.from) || !graph.contains(e.to)) {
      add(IssueKind::kDanglingEdge, {e.from, e.to});
      dangling = true;
      continue;
    }
    if (e.from == e.to) {
      add(IssueKind::kSelfLoop, {e.from});
      continue;
    }
    if (!seen_edges.insert({e.from, e.to}).second) add(IssueKind::kDuplicateEdge, {e.from, e.to});
  }

  // Cycle detection (Kahn) over the well-formed edges only.
  if (!dangling) {
    const std::size_t n = graph.num_vertices();
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [from, to] : seen_edges) {
      const std::size_t a = *graph.index_of(from);
      const std::size_t b = *graph.index_of(to);
      out[a].push_back(b);
      ++indeg[b];
    }
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) stack.push_back(i);
    std::size_t removed = 0;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++removed;
      for (std::size_t j : out[i])
        if (--indeg[j] == 0) stack.push_back(j);
    }
    if (removed < n) {
      std::vector<VertexId> on_cycle;
      for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] > 0) on_cycle.push_back(graph.vertices()[i].id);
      add(IssueKind::kDirectedCycle, std::move(on_cycle));
    }
  }

  report.is_valid = report.issues.empty();
  return report;
}

void require_valid(const LaneGraph& graph, bool allow_cycles) {
  const ValidationReport report = validate(graph);
  const bool ok = allow_cycles ? report.structurally_valid() : report.is_valid;
  if (!ok) throw ValidationError("invalid lane graph: " + report.summary());
}

Adjacency build_adjacency(const LaneGraph& graph) {
  const std::size_t n = graph.num_vertices();
  Adjacency adj;
  adj.out.resize(n);
  adj.in.resize(n);
  for (const Edge& e : graph.edges()) {
    const auto a = graph.index_of(e.from);
    const auto b = graph.index_of(e.to);
    if (!a || !b) throw ValidationError("edge references a missing vertex");
    adj.out[*a].push_back(*b);
    adj.in[*b].push_back(*a);
  }
  const auto& vs = graph.vertices();
  auto by_id = [&vs](std::size_t a, std::size_t b) { return vs[a].id < vs[b].id; };
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj.out[i].begin(), adj.out[i].end(), by_id);
    std::sort(adj.in[i].begin(), adj.in[i].end(), by_id);
  }
  return adj;
}

LaneGraph interpolate(const LaneGraph& graph, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("interpolation spacing must be positive");
  require_valid(graph, /*allow_cycles=*/true);

  LaneGraph out;
  for (const Vertex& v : graph.vertices()) out.add_vertex(v.id, v.pos);
  VertexId next = graph.next_id();
  for (const Edge& e : graph.edges()) {
    const Point2 a = graph.position(e.from);
    const Point2 b = graph.position(e.to);
    const int parts = segment_split_count(distance(a, b), spacing);
    VertexId prev = e.from;
    for (int k = 1; k < parts; ++k) {
      const VertexId id = next++;
      out.add_vertex(id, segment_point(a, b, k, parts));
      out.add_edge(prev, id);
      prev = id;
    }
    out.add_edge(prev, e.to);
  }
  return out;
}

std::vector<VertexId> junctions(const LaneGraph& graph) {
  const Adjacency adj = build_adjacency(graph);
  std::vector<VertexId> result;
  for (std::size_t i = 0; i < graph.num_vertices(); ++i) {
    if (adj.in_degree(i) >= 2 || adj.out_degree(i) >= 2) result.push_back(graph.vertices()[i].id);
  }
  return result;
}

LaneGraph to_undirected(const LaneGraph& graph) {
  LaneGraph out;
  for (const Vertex& v : graph.vertices()) out.add_vertex(v.id, v.pos);
  std::set<std::pair<VertexId, VertexId>> present;
  for (const Edge& e : graph.edges()) present.insert({e.from, e.to});
  for (const Edge& e : graph.edges()) {
    out.add_edge(e.from, e.to);
    if (!present.contains({e.to, e.from})) {
      out.add_edge(e.to, e.from);
      present.insert({e.to, e.from});
    }
  }
  return out;
}

std::vector<std::size_t> bounded_traverse_indices(const LaneGraph& graph, const Adjacency& adj,
                                                  std::size_t anchor, double max_dist) {
  const auto& vs = graph.vertices();
  // Dijkstra is run lazily: only vertices that can still fall under the bound
  // are touched, so the cost scales with the subgraph and not the graph.
  std::unordered_map<std::size_t, double> dist;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[anchor] = 0.0;
  queue.push({0.0, anchor});
  std::vector<std::size_t> kept;
  while (!queue.empty()) {
    const auto [d, i] = queue.top();
    queue.pop();
    if (d > dist[i]) continue;
    kept.push_back(i);
    for (std::size_t j : adj.out[i]) {
      const double nd = d + distance(vs[i].pos, vs[j].pos);
      if (!(nd < max_dist - kBoundEps)) continue;
      const auto it = dist.find(j);
      if (it == dist.end() || nd < it->second) {
        dist[j] = nd;
        queue.push({nd, j});
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

Subgraph bounded_traverse(const LaneGraph& graph, VertexId anchor, double max_dist) {
  if (!(max_dist > 0.0)) throw InvalidArgument("traversal distance must be positive");
  const auto anchor_idx = graph.index_of(anchor);
  if (!anchor_idx) throw NotFoundError("anchor vertex " + std::to_string(anchor) + " not in graph");
  const Adjacency adj = build_adjacency(graph);
  const std::vector<std::size_t> kept = bounded_traverse_indices(graph, adj, *anchor_idx, max_dist);

  std::vector<char> in_sub(graph.num_vertices(), 0);
  Subgraph sub;
  sub.anchor = anchor;
  for (std::size_t i : kept) {
    in_sub[i] = 1;
    sub.graph.add_vertex(graph.vertices()[i].id, graph.vertices()[i].pos);
  }
  for (const Edge& e : graph.edges()) {
    if (in_sub[*graph.index_of(e.from)] && in_sub[*graph.index_of(e.to)]) sub.graph.add_edge(e.from, e.to);
  }
  return sub;
}

namespace {

using QuantizedPoint = std::pair<std::int64_t, std::int64_t>;

QuantizedPoint quantize(Point2 p, double quantum) {
  return {std::llround(p.x / quantum), std::llround(p.y / quantum)};
}

// Sorted quantized vertices and edges; nullopt when two vertices collide.
std::optional<std::pair<std::vector<QuantizedPoint>, std::vector<std::pair<QuantizedPoint, QuantizedPoint>>>>
canonical_form(const LaneGraph& g, double quantum) {
  std::vector<QuantizedPoint> verts;
  for (const Vertex& v : g.vertices()) verts.push_back(quantize(v.pos, quantum));
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) return std::nullopt;
  std::vector<std::pair<QuantizedPoint, QuantizedPoint>> edges;
  for (const Edge& e : g.edges()) {
    if (!g.contains(e.from) || !g.contains(e.to)) return std::nullopt;
    edges.emplace_back(quantize(g.position(e.from), quantum), quantize(g.position(e.to), quantum));
  }
  std::sort(edges.begin(), edges.end());
  return std::make_pair(std::move(verts), std::move(edges));
}

}  // namespace

bool geometrically_equal(const LaneGraph& a, const LaneGraph& b, double quantum) {
  const auto ca = canonical_form(a, quantum);
  const auto cb = canonical_form(b, quantum);
  return ca && cb && *ca == *cb;
}

std::uint64_t graph_digest(const LaneGraph& graph) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(graph.num_vertices());
  for (const Vertex& v : graph.vertices()) {
    mix(static_cast<std::uint64_t>(v.id));
    mix(std::bit_cast<std::uint64_t>(v.pos.x));
    mix(std::bit_cast<std::uint64_t>(v.pos.y));
  }
  mix(graph.num_edges());
  for (const Edge& e : graph.edges()) {
    mix(static_cast<std::uint64_t>(e.from));
    mix(static_cast<std::uint64_t>(e.to));
  }
  return h;
}

}  // namespace lanegraph
