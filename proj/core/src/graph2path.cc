#include "lanegraph/graph2path.h"

#include <algorithm>

#include "lanegraph/errors.h"

namespace lanegraph {
namespace {

// Vertices from which `target` is reachable.
std::vector<char> reaches(const Adjacency& adj, std::size_t target) {
  std::vector<char> mark(adj.in.size(), 0);
  std::vector<std::size_t> stack{target};
  mark[target] = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t p : adj.in[i]) {
      if (!mark[p]) {
        mark[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return mark;
}

class PathEnumerator {
 public:
  PathEnumerator(const LaneGraph& graph, const Adjacency& adj, std::size_t leaf, std::size_t cap)
      : graph_(graph), adj_(adj), leaf_(leaf), cap_(cap), useful_(reaches(adj, leaf)),
        on_path_(adj.out.size(), 0) {}

  PathEnumeration run(std::size_t root) {
    if (useful_[root]) visit(root);
    return std::move(result_);
  }

 private:
  void visit(std::size_t i) {
    if (result_.truncated) return;
    stack_.push_back(i);
    on_path_[i] = 1;
    if (i == leaf_) {
      if (result_.paths.size() == cap_) {
        result_.truncated = true;
      } else {
        std::vector<VertexId> ids;
        ids.reserve(stack_.size());
        for (std::size_t k : stack_) ids.push_back(graph_.vertices()[k].id);
        result_.paths.push_back(std::move(ids));
      }
    } else {
      for (std::size_t j : adj_.out[i]) {
        if (useful_[j] && !on_path_[j]) visit(j);
        if (result_.truncated) break;
      }
    }
    on_path_[i] = 0;
    stack_.pop_back();
  }

  const LaneGraph& graph_;
  const Adjacency& adj_;
  std::size_t leaf_;
  std::size_t cap_;
  std::vector<char> useful_;
  std::vector<char> on_path_;
  std::vector<std::size_t> stack_;
  PathEnumeration result_;
};

PathEnumeration enumerate(const LaneGraph& graph, const Adjacency& adj, std::size_t root,
                          std::size_t leaf, std::size_t cap) {
  return PathEnumerator(graph, adj, leaf, cap).run(root);
}

}  // namespace

RootsAndLeaves roots_and_leaves(const LaneGraph& graph) {
  const Adjacency adj = build_adjacency(graph);
  RootsAndLeaves result;
  for (std::size_t i = 0; i < graph.num_vertices(); ++i) {
    const VertexId id = graph.vertices()[i].id;
    if (adj.in_degree(i) == 0) result.roots.push_back(id);
    if (adj.out_degree(i) == 0) result.leaves.push_back(id);
  }
  std::sort(result.roots.begin(), result.roots.end());
  std::sort(result.leaves.begin(), result.leaves.end());
  return result;
}

PathEnumeration find_paths(const LaneGraph& graph, VertexId root, VertexId leaf, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("path cap must be at least 1");
  const auto r = graph.index_of(root);
  const auto l = graph.index_of(leaf);
  if (!r) throw NotFoundError("root vertex " + std::to_string(root) + " not in graph");
  if (!l) throw NotFoundError("leaf vertex " + std::to_string(leaf) + " not in graph");
  const Adjacency adj = build_adjacency(graph);
  return enumerate(graph, adj, *r, *l, cap);
}

PathEnumeration graph_to_vertex_paths(const LaneGraph& graph, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("path cap must be at least 1");
  require_valid(graph);
  if (graph.empty()) throw InvalidArgument("cannot decompose an empty lane graph");

  const Adjacency adj = build_adjacency(graph);
  const RootsAndLeaves rl = roots_and_leaves(graph);
  PathEnumeration all;
  for (VertexId root : rl.roots) {
    for (VertexId leaf : rl.leaves) {
      if (root == leaf) continue;
      PathEnumeration found = enumerate(graph, adj, *graph.index_of(root), *graph.index_of(leaf), cap);
      all.truncated = all.truncated || found.truncated;
      for (auto& p : found.paths) all.paths.push_back(std::move(p));
    }
  }
  return all;
}

PathSet graph_to_paths(const LaneGraph& graph, std::size_t cap) {
  const PathEnumeration vertex_paths = graph_to_vertex_paths(graph, cap);
  PathSet set;
  set.truncated = vertex_paths.truncated;
  set.source_graph_digest = graph_digest(graph);
  set.paths.reserve(vertex_paths.paths.size());
  for (const auto& ids : vertex_paths.paths) {
    std::vector<Point2> points;
    points.reserve(ids.size());
    for (VertexId id : ids) points.push_back(graph.position(id));
    set.paths.emplace_back(std::move(points));
  }
  return set;
}

}  // namespace lanegraph
