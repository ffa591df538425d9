#include "lanegraph/matching.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace lanegraph {
namespace {

constexpr double kThresholdEps = 1e-9;

__extension__ typedef __int128 Cost;

std::int64_t micrometres(double d) { return std::llround(d * 1e6); }
std::int64_t squared_units(double d) { return std::llround(d * d * 1e4); }

// Indices sorted by (x, y), stable.
std::vector<std::size_t> geometric_order(std::span<const Point2> pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&pts](std::size_t i, std::size_t j) {
    if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
    return pts[i].y < pts[j].y;
  });
  return order;
}

// Min-cost flow on a unit-capacity bipartite network. Nodes: 0 = source,
// 1..na = left, na+1..na+nb = right, last = sink.
class AssignmentFlow {
 public:
  AssignmentFlow(std::size_t na, std::size_t nb) : na_(na), nb_(nb), graph_(na + nb + 2) {
    for (std::size_t i = 0; i < na; ++i) add_arc(source(), left(i), 0);
    for (std::size_t j = 0; j < nb; ++j) add_arc(right(j), sink(), 0);
  }

  void add_pair(std::size_t i, std::size_t j, Cost cost) { add_arc(left(i), right(j), cost); }

  // Primal-dual: a Dijkstra pass on reduced costs raises the potentials, then
  // a depth-first phase augments a maximal set of paths made of zero-reduced-
  // cost arcs. Each search stops once the sink is settled; potentials rise by
  // min(dist, D), which keeps every residual reduced cost non-negative.
  void solve() {
    const std::size_t n = graph_.size();
    potential_.assign(n, 0);
    std::vector<Cost> dist(n);
    const Cost inf = static_cast<Cost>(1) << 120;
    using Item = std::pair<Cost, std::size_t>;
    while (true) {
      std::fill(dist.begin(), dist.end(), inf);
      std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
      dist[source()] = 0;
      queue.push({0, source()});
      while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        if (u == sink()) break;
        for (std::size_t a : graph_[u]) {
          const Arc& arc = arcs_[a];
          if (arc.residual == 0) continue;
          const Cost nd = d + reduced(u, arc);
          if (nd < dist[arc.to]) {
            dist[arc.to] = nd;
            queue.push({nd, arc.to});
          }
        }
      }
      const Cost reach = dist[sink()];
      if (reach == inf) break;
      for (std::size_t v = 0; v < n; ++v) potential_[v] += std::min(dist[v], reach);
      augment_admissible();
    }
  }

  // Matched right index per left index (kNone when unmatched).
  std::vector<std::size_t> left_partners() const {
    std::vector<std::size_t> partner(na_, kNone);
    for (std::size_t i = 0; i < na_; ++i) {
      for (std::size_t a : graph_[left(i)]) {
        const Arc& arc = arcs_[a];
        if (a % 2 == 0 && arc.to != source() && arc.residual == 0) partner[i] = arc.to - na_ - 1;
      }
    }
    return partner;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

 private:
  struct Arc {
    std::size_t to;
    int residual;
    Cost cost;
  };

  Cost reduced(std::size_t from, const Arc& arc) const { return arc.cost + potential_[from] - potential_[arc.to]; }

  // Augments vertex-disjoint source-sink paths over residual arcs of zero
  // reduced cost until none is left. Nodes that lead nowhere are retired.
  void augment_admissible() {
    const std::size_t n = graph_.size();
    std::vector<std::size_t> next(n, 0);
    std::vector<char> dead(n, 0);
    std::vector<char> on_path(n, 0);
    std::vector<std::size_t> path;
    std::size_t u = source();
    on_path[u] = 1;
    while (true) {
      if (u == sink()) {
        for (std::size_t a : path) {
          arcs_[a].residual -= 1;
          arcs_[a ^ 1].residual += 1;
          on_path[arcs_[a].to] = 0;
        }
        path.clear();
        u = source();
        continue;
      }
      bool advanced = false;
      for (; next[u] < graph_[u].size(); ++next[u]) {
        const std::size_t a = graph_[u][next[u]];
        const Arc& arc = arcs_[a];
        if (arc.residual == 0 || dead[arc.to] || on_path[arc.to] || reduced(u, arc) != 0) continue;
        path.push_back(a);
        on_path[arc.to] = 1;
        u = arc.to;
        advanced = true;
        break;
      }
      if (advanced) continue;
      dead[u] = 1;
      if (u == source()) return;
      on_path[u] = 0;
      const std::size_t a = path.back();
      path.pop_back();
      u = arcs_[a ^ 1].to;
    }
  }

  std::size_t source() const { return 0; }
  std::size_t sink() const { return na_ + nb_ + 1; }
  std::size_t left(std::size_t i) const { return 1 + i; }
  std::size_t right(std::size_t j) const { return 1 + na_ + j; }

  void add_arc(std::size_t from, std::size_t to, Cost cost) {
    graph_[from].push_back(arcs_.size());
    arcs_.push_back({to, 1, cost});
    graph_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, -cost});
  }

  std::size_t na_;
  std::size_t nb_;
  std::vector<std::vector<std::size_t>> graph_;
  std::vector<Arc> arcs_;
  std::vector<Cost> potential_;
};

}  // namespace

bool is_candidate_distance(double d, double threshold) { return d < threshold - kThresholdEps; }

std::vector<IndexPair> candidate_pairs(std::span<const Point2> a, std::span<const Point2> b, double threshold) {
  std::vector<IndexPair> pairs;
  if (a.empty() || b.empty() || !(threshold > 0.0)) return pairs;
  auto cell = [threshold](double v) { return static_cast<std::int64_t>(std::floor(v / threshold)); };
  std::unordered_map<std::int64_t, std::unordered_map<std::int64_t, std::vector<std::size_t>>> grid;
  for (std::size_t j = 0; j < b.size(); ++j) grid[cell(b[j].x)][cell(b[j].y)].push_back(j);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t cx = cell(a[i].x);
    const std::int64_t cy = cell(a[i].y);
    const std::size_t first = pairs.size();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      const auto col = grid.find(cx + dx);
      if (col == grid.end()) continue;
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto bucket = col->second.find(cy + dy);
        if (bucket == col->second.end()) continue;
        for (std::size_t j : bucket->second) {
          const double d = distance(a[i], b[j]);
          if (is_candidate_distance(d, threshold)) pairs.push_back({i, j, d});
        }
      }
    }
    std::sort(pairs.begin() + static_cast<std::ptrdiff_t>(first), pairs.end(),
              [](const IndexPair& p, const IndexPair& q) { return p.b < q.b; });
  }
  return pairs;
}

std::vector<IndexPair> min_cost_max_matching(std::span<const Point2> a, std::span<const Point2> b, double threshold) {
  // Work in geometric order so the outcome ignores input order and ids.
  const std::vector<std::size_t> order_a = geometric_order(a);
  const std::vector<std::size_t> order_b = geometric_order(b);
  std::vector<Point2> sa(a.size());
  std::vector<Point2> sb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) sa[i] = a[order_a[i]];
  for (std::size_t j = 0; j < b.size(); ++j) sb[j] = b[order_b[j]];
  const std::vector<IndexPair> cand = candidate_pairs(sa, sb, threshold);

  // Connected components of the candidate graph are solved independently.
  const std::size_t na = sa.size();
  std::vector<std::size_t> parent(na + sb.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const IndexPair& p : cand) {
    const std::size_t r1 = find(p.a);
    const std::size_t r2 = find(na + p.b);
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_component;
  std::vector<std::size_t> component_order;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    const std::size_t root = find(cand[k].a);
    auto [it, inserted] = by_component.try_emplace(root);
    if (inserted) component_order.push_back(root);
    it->second.push_back(k);
  }

  std::vector<IndexPair> result;
  for (std::size_t root : component_order) {
    const std::vector<std::size_t>& members = by_component[root];
    std::unordered_map<std::size_t, std::size_t> local_a;
    std::unordered_map<std::size_t, std::size_t> local_b;
    std::vector<std::size_t> global_a;
    std::vector<std::size_t> global_b;
    for (std::size_t k : members) {
      if (local_a.try_emplace(cand[k].a, global_a.size()).second) global_a.push_back(cand[k].a);
      if (local_b.try_emplace(cand[k].b, global_b.size()).second) global_b.push_back(cand[k].b);
    }
    // Distance first; squared distance only separates equal totals.
    const Cost scale = static_cast<Cost>(std::min(global_a.size(), global_b.size()) + 1) *
                       (squared_units(threshold) + 1);
    AssignmentFlow flow(global_a.size(), global_b.size());
    for (std::size_t k : members) {
      const double d = cand[k].distance;
      flow.add_pair(local_a[cand[k].a], local_b[cand[k].b], micrometres(d) * scale + squared_units(d));
    }
    flow.solve();
    const std::vector<std::size_t> partner = flow.left_partners();
    for (std::size_t i = 0; i < partner.size(); ++i) {
      if (partner[i] == AssignmentFlow::kNone) continue;
      const std::size_t ga = global_a[i];
      const std::size_t gb = global_b[partner[i]];
      result.push_back({order_a[ga], order_b[gb], distance(sa[ga], sb[gb])});
    }
  }
  std::sort(result.begin(), result.end(), [](const IndexPair& p, const IndexPair& q) { return p.a < q.a; });
  return result;
}

std::size_t max_matching_size(std::span<const Point2> a, std::span<const Point2> b, double threshold) {
  const std::vector<IndexPair> cand = candidate_pairs(a, b, threshold);
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (const IndexPair& p : cand) adj[p.a].push_back(p.b);

  // Kuhn's augmenting paths after a greedy start.
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_b(b.size(), kFree);
  std::vector<std::size_t> match_a(a.size(), kFree);
  std::size_t size = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j : adj[i]) {
      if (match_b[j] == kFree) {
        match_b[j] = i;
        match_a[i] = j;
        ++size;
        break;
      }
    }
  }
  std::vector<std::size_t> seen(b.size(), kFree);
  std::function<bool(std::size_t, std::size_t)> augment = [&](std::size_t i, std::size_t stamp) {
    for (std::size_t j : adj[i]) {
      if (seen[j] == stamp) continue;
      seen[j] = stamp;
      if (match_b[j] == kFree || augment(match_b[j], stamp)) {
        match_b[j] = i;
        match_a[i] = j;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (match_a[i] != kFree) continue;
    if (augment(i, i)) ++size;
  }
  return size;
}

}  // namespace lanegraph
