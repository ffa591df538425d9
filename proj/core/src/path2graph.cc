#include "lanegraph/path2graph.h"

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "lanegraph/errors.h"

namespace lanegraph {
namespace {

using CellKey = std::pair<std::int64_t, std::int64_t>;

CellKey cell_of(Point2 p, double size) {
  return {static_cast<std::int64_t>(std::llround(p.x / size)), static_cast<std::int64_t>(std::llround(p.y / size))};
}

CellKey floor_cell(Point2 p, double size) {
  return {static_cast<std::int64_t>(std::floor(p.x / size)), static_cast<std::int64_t>(std::floor(p.y / size))};
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }

  // The smaller index becomes the root so roots are the first member.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }

  std::vector<std::size_t> parent;
};

}  // namespace

void MergeConfig::check() const {
  if (!(discretize_step > 0.0)) throw InvalidArgument("discretize_step must be positive");
  if (!(merge_radius >= 0.0)) throw InvalidArgument("merge_radius must be non-negative");
  if (!(quantum > 0.0)) throw InvalidArgument("quantum must be positive");
}

std::vector<Point2> discretize_path(const Polyline& path, double step) {
  if (!(step > 0.0)) throw InvalidArgument("discretization step must be positive");
  if (!(path.length() > 0.0)) throw GeometryError("cannot discretize a zero-length path");
  const auto& pts = path.points();
  std::vector<Point2> out{pts.front()};
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const int parts = segment_split_count(distance(pts[s], pts[s + 1]), step);
    for (int k = 1; k <= parts; ++k) out.push_back(segment_point(pts[s], pts[s + 1], k, parts));
  }
  return out;
}

LaneGraph merge_vertices_by_overlap(const LaneGraph& graph, double radius, double quantum) {
  if (!(radius >= 0.0)) throw InvalidArgument("merge radius must be non-negative");
  if (!(quantum > 0.0)) throw InvalidArgument("quantum must be positive");
  require_valid(graph, /*allow_cycles=*/true);

  const auto& vs = graph.vertices();
  const std::size_t n = vs.size();
  DisjointSets sets(n);

  if (radius == 0.0) {
    std::map<CellKey, std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [it, inserted] = first.try_emplace(cell_of(vs[i].pos, quantum), i);
      if (!inserted) sets.unite(it->second, i);
    }
  } else {
    std::unordered_map<std::int64_t, std::unordered_map<std::int64_t, std::vector<std::size_t>>> grid;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [cx, cy] = floor_cell(vs[i].pos, radius);
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          const auto col = grid.find(cx + dx);
          if (col == grid.end()) continue;
          const auto cell = col->second.find(cy + dy);
          if (cell == col->second.end()) continue;
          for (std::size_t j : cell->second)
            if (distance(vs[i].pos, vs[j].pos) <= radius) sets.unite(i, j);
        }
      }
      grid[cx][cy].push_back(i);
    }
  }

  // Components in order of their first member.
  std::vector<std::size_t> component(n);
  std::vector<std::size_t> root_to_new(n, n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = sets.find(i);
    if (root_to_new[r] == n) {
      root_to_new[r] = members.size();
      members.emplace_back();
    }
    component[i] = root_to_new[r];
    members[component[i]].push_back(i);
  }

  LaneGraph out;
  for (std::size_t c = 0; c < members.size(); ++c) {
    Point2 pos = vs[members[c].front()].pos;
    if (radius > 0.0 && members[c].size() > 1) {
      Point2 sum;
      for (std::size_t i : members[c]) sum = sum + vs[i].pos;
      pos = (1.0 / static_cast<double>(members[c].size())) * sum;
    }
    out.add_vertex(static_cast<VertexId>(c), pos);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : graph.edges()) {
    const std::size_t a = component[*graph.index_of(e.from)];
    const std::size_t b = component[*graph.index_of(e.to)];
    if (a == b) continue;
    if (!seen.insert({a, b}).second) continue;
    out.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return out;
}

LaneGraph paths_to_graph(const PathSet& paths, const MergeConfig& config) {
  config.check();
  if (paths.empty()) throw InvalidArgument("cannot build a lane graph from an empty path set");
  LaneGraph raw;
  for (const Polyline& path : paths.paths) {
    const std::vector<Point2> seq = discretize_path(path, config.discretize_step);
    VertexId prev = raw.add_vertex(seq.front());
    for (std::size_t j = 1; j < seq.size(); ++j) {
      const VertexId id = raw.add_vertex(seq[j]);
      raw.add_edge(prev, id);
      prev = id;
    }
  }
  return merge_vertices_by_overlap(raw, config.merge_radius, config.quantum);
}

}  // namespace lanegraph
