#include "oracles/fixtures.h"

#include <algorithm>

#include "lanegraph/random.h"

namespace lanegraph::testing {

LaneGraph make_graph(const std::vector<Point2>& positions, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  LaneGraph g;
  for (const Point2& p : positions) g.add_vertex(p);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

LaneGraph chain_fixture() { return make_graph({{0, 0}, {0, 3}, {0, 6}}, {{0, 1}, {1, 2}}); }

LaneGraph fork_fixture() {
  return make_graph({{0, 0}, {0, 3}, {-1.5, 6}, {1.5, 6}}, {{0, 1}, {1, 2}, {1, 3}});
}

LaneGraph merge_fixture() {
  return make_graph({{-1.5, 0}, {1.5, 0}, {0, 3}, {0, 6}}, {{0, 2}, {1, 2}, {2, 3}});
}

LaneGraph diamond_fixture() {
  return make_graph({{0, 0}, {-1.5, 3}, {1.5, 3}, {0, 6}}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

LaneGraph double_diamond_fixture() {
  return make_graph({{0, 0}, {-1.5, 3}, {1.5, 3}, {0, 6}, {-1.5, 9}, {1.5, 9}, {0, 12}},
                    {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}});
}

LaneGraph tiny_fork_fixture() {
  return make_graph({{0, 0}, {0, 0.3}, {-0.2, 0.6}, {0.2, 0.6}}, {{0, 1}, {1, 2}, {1, 3}});
}

LaneGraph tiny_merge_fixture() {
  return make_graph({{-0.2, 0}, {0.2, 0}, {0, 0.3}, {0, 0.5}}, {{0, 2}, {1, 2}, {2, 3}});
}

LaneGraph straight_chain(std::size_t n, double spacing, Point2 start) {
  LaneGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex({start.x, start.y + spacing * static_cast<double>(i)});
  for (std::size_t i = 1; i < n; ++i) g.add_edge(static_cast<VertexId>(i - 1), static_cast<VertexId>(i));
  return g;
}

LaneGraph translated(const LaneGraph& g, Point2 offset) {
  LaneGraph out;
  for (const Vertex& v : g.vertices()) out.add_vertex(v.id, v.pos + offset);
  for (const Edge& e : g.edges()) out.add_edge(e.from, e.to);
  return out;
}

LaneGraph jittered(const LaneGraph& g, double sigma, std::uint64_t seed) {
  CounterRng rng(seed, 99);
  LaneGraph out;
  for (const Vertex& v : g.vertices()) {
    const double dx = rng.gaussian(sigma);
    const double dy = rng.gaussian(sigma);
    out.add_vertex(v.id, {v.pos.x + dx, v.pos.y + dy});
  }
  for (const Edge& e : g.edges()) out.add_edge(e.from, e.to);
  return out;
}

LaneGraph relabeled(const LaneGraph& g) {
  auto map = [](VertexId id) { return 1000 + 7 * id; };
  LaneGraph out;
  std::vector<Vertex> vs = g.vertices();
  std::reverse(vs.begin(), vs.end());
  for (const Vertex& v : vs) out.add_vertex(map(v.id), v.pos);
  std::vector<Edge> es = g.edges();
  std::reverse(es.begin(), es.end());
  for (const Edge& e : es) out.add_edge(map(e.from), map(e.to));
  return out;
}

std::vector<NamedGraph> base_fixtures() {
  return {{"chain", chain_fixture()},
          {"fork", fork_fixture()},
          {"merge", merge_fixture()},
          {"diamond", diamond_fixture()},
          {"double_diamond", double_diamond_fixture()},
          {"tiny_fork", tiny_fork_fixture()},
          {"tiny_merge", tiny_merge_fixture()}};
}

std::vector<MetricCase> metric_cases() {
  std::vector<MetricCase> cases;
  for (const NamedGraph& f : base_fixtures()) {
    cases.push_back({f.name + "/self", f.graph, f.graph});
    cases.push_back({f.name + "/shift_x", translated(f.graph, {0.2, 0.0}), f.graph});
    cases.push_back({f.name + "/shift_xy", translated(f.graph, {0.13, 0.07}), f.graph});
    cases.push_back({f.name + "/noise", jittered(f.graph, 0.1, 11), f.graph});
    cases.push_back({f.name + "/noise_big", jittered(f.graph, 0.3, 12), f.graph});
  }
  cases.push_back({"merge_vs_fork", merge_fixture(), fork_fixture()});
  cases.push_back({"chain_vs_fork", chain_fixture(), fork_fixture()});
  cases.push_back({"diamond_vs_double_diamond", diamond_fixture(), double_diamond_fixture()});
  cases.push_back({"tiny_merge_vs_tiny_fork", tiny_merge_fixture(), tiny_fork_fixture()});
  return cases;
}

}  // namespace lanegraph::testing
