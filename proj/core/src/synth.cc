#include "lanegraph/synth.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lanegraph/errors.h"
#include "lanegraph/random.h"

namespace lanegraph {
namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

struct Target {
  double base_x = 0.0;
  std::vector<VertexId> sources;
};

// Arc-length point on a polyline.
Point2 point_at(const std::vector<Point2>& pts, double s) {
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double len = distance(pts[i - 1], pts[i]);
    if (acc + len >= s && len > 0.0) {
      const double f = std::clamp((s - acc) / len, 0.0, 1.0);
      return pts[i - 1] + f * (pts[i] - pts[i - 1]);
    }
    acc += len;
  }
  return pts.back();
}

// Keeps the arc-length window [from, to] of a polyline.
std::vector<Point2> trim(const std::vector<Point2>& pts, double from, double to) {
  std::vector<Point2> out{point_at(pts, from)};
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    acc += distance(pts[i - 1], pts[i]);
    if (acc > from && acc < to && !(pts[i] == out.back())) out.push_back(pts[i]);
  }
  const Point2 end = point_at(pts, to);
  if (!(end == out.back())) out.push_back(end);
  return out;
}

}  // namespace

void SynthConfig::check() const {
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
    throw InvalidArgument("synth bounds are degenerate");
  if (!is_probability(fork_prob) || !is_probability(merge_prob))
    throw InvalidArgument("fork_prob and merge_prob must lie in [0, 1]");
  if (num_roots == 0) throw InvalidArgument("num_roots must be at least 1");
  if (max_depth == 0) throw InvalidArgument("max_depth must be at least 1");
  if (!(lane_width > 0.0) || !(min_edge_len > 0.0) || !(position_jitter >= 0.0))
    throw InvalidArgument("lane_width and min_edge_len must be positive, position_jitter non-negative");
  if (max_lanes < num_roots) throw InvalidArgument("max_lanes must be at least num_roots");
  if (position_jitter >= 0.25 * lane_width) throw InvalidArgument("position_jitter must stay below lane_width / 4");
  const double width = bounds.x_max - bounds.x_min;
  if (static_cast<double>(num_roots - 1) * lane_width + 2.0 * position_jitter > width)
    throw InvalidArgument("num_roots lanes do not fit inside the bounds");
  const double gap = (bounds.y_max - bounds.y_min) / static_cast<double>(max_depth);
  if (gap < min_edge_len) throw InvalidArgument("max_depth layers leave edges shorter than min_edge_len");
  if (max_vertices != 0 && max_vertices < 2 * num_roots)
    throw InvalidArgument("max_vertices cannot hold even one layer transition");
}

LaneGraph generate_graph(const SynthConfig& config) {
  config.check();
  CounterRng rng(config.seed, 0);
  const Box& b = config.bounds;
  const double x_lo = b.x_min + config.position_jitter;
  const double x_hi = b.x_max - config.position_jitter;
  const double gap = (b.y_max - b.y_min) / static_cast<double>(config.max_depth);
  const double min_sep = 0.5 * config.lane_width;

  auto place = [&](double base_x, std::size_t layer) {
    const double jx = config.position_jitter > 0.0 ? rng.uniform(-config.position_jitter, config.position_jitter) : 0.0;
    const double x = std::clamp(base_x + jx, b.x_min, b.x_max);
    return Point2{x, b.y_min + gap * static_cast<double>(layer)};
  };

  LaneGraph graph;
  // Initial lanes centred with a random lateral offset.
  const double span = static_cast<double>(config.num_roots - 1) * config.lane_width;
  const double slack = (x_hi - x_lo) - span;
  double left = x_lo + rng.uniform() * slack;
  std::vector<std::pair<double, VertexId>> lanes;
  for (std::size_t i = 0; i < config.num_roots; ++i) {
    const double base = left + static_cast<double>(i) * config.lane_width;
    lanes.emplace_back(base, graph.add_vertex(place(base, 0)));
  }

  for (std::size_t layer = 1; layer <= config.max_depth; ++layer) {
    std::vector<Target> targets;
    for (std::size_t i = 0; i < lanes.size(); ++i) {
      const auto [base, vid] = lanes[i];
      const bool can_merge = i + 1 < lanes.size();
      if (can_merge && rng.bernoulli(config.merge_prob)) {
        targets.push_back({0.5 * (base + lanes[i + 1].first), {vid, lanes[i + 1].second}});
        ++i;
        continue;
      }
      const std::size_t projected = targets.size() + (lanes.size() - i) + 1;
      if (projected <= config.max_lanes && rng.bernoulli(config.fork_prob)) {
        const double half = 0.5 * config.lane_width;
        targets.push_back({std::clamp(base - half, x_lo, x_hi), {vid}});
        targets.push_back({std::clamp(base + half, x_lo, x_hi), {vid}});
        continue;
      }
      targets.push_back({base, {vid}});
    }

    // Neighbours that ended up too close share one vertex (an implicit merge).
    std::vector<Target> resolved;
    for (Target& t : targets) {
      if (!resolved.empty() && t.base_x - resolved.back().base_x < min_sep) {
        Target& prev = resolved.back();
        prev.base_x = 0.5 * (prev.base_x + t.base_x);
        for (VertexId s : t.sources)
          if (std::find(prev.sources.begin(), prev.sources.end(), s) == prev.sources.end()) prev.sources.push_back(s);
        continue;
      }
      resolved.push_back(std::move(t));
    }

    if (config.max_vertices != 0 && graph.num_vertices() + resolved.size() > config.max_vertices) break;

    std::vector<std::pair<double, VertexId>> next;
    for (const Target& t : resolved) {
      const VertexId v = graph.add_vertex(place(t.base_x, layer));
      for (VertexId s : t.sources) graph.add_edge(s, v);
      next.emplace_back(t.base_x, v);
    }
    lanes = std::move(next);
  }
  return graph;
}

void PerturbConfig::check() const {
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise_sigma must be non-negative");
  if (!is_probability(drop_path_prob) || !is_probability(truncate_prob) || !is_probability(spurious_path_prob))
    throw InvalidArgument("perturbation probabilities must lie in [0, 1]");
  if (!(max_truncate_fraction >= 0.0 && max_truncate_fraction < 1.0))
    throw InvalidArgument("max_truncate_fraction must lie in [0, 1)");
}

PathSet perturb_paths(const PathSet& paths, const PerturbConfig& config) {
  config.check();
  PathSet out;
  out.source_graph_digest = paths.source_graph_digest;
  out.truncated = paths.truncated;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CounterRng rng(config.seed, i);
    // Fixed draw order: drop, truncate decision, truncate amount, side, spurious, then noise.
    const bool drop = rng.bernoulli(config.drop_path_prob);
    const bool truncate = rng.bernoulli(config.truncate_prob);
    const double fraction = rng.uniform() * config.max_truncate_fraction;
    const bool from_start = rng.bernoulli(0.5);
    const bool spurious = rng.bernoulli(config.spurious_path_prob);

    if (!drop) {
      std::vector<Point2> pts = paths.paths[i].points();
      if (config.noise_sigma > 0.0) {
        for (Point2& p : pts) {
          p.x += rng.gaussian(config.noise_sigma);
          p.y += rng.gaussian(config.noise_sigma);
        }
      }
      if (truncate && fraction > 0.0) {
        const double len = polyline_length(pts);
        const double cut = fraction * len;
        pts = from_start ? trim(pts, cut, len) : trim(pts, 0.0, len - cut);
      }
      out.paths.emplace_back(std::move(pts));
    }

    if (spurious) {
      CounterRng extra(config.seed, (std::uint64_t{1} << 32) + i);
      const Box& sb = config.spurious_bounds;
      Point2 a{extra.uniform(sb.x_min, sb.x_max), extra.uniform(sb.y_min, sb.y_max)};
      Point2 c{extra.uniform(sb.x_min, sb.x_max), extra.uniform(sb.y_min, sb.y_max)};
      if (!(a == c)) out.paths.emplace_back(std::vector<Point2>{a, c});
    }
  }
  return out;
}

}  // namespace lanegraph
