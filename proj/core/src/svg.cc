#include "lanegraph/svg.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <set>
#include <string>

namespace lanegraph {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Fixed-precision formatting keeps the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

Box bounding_box(const LaneGraph& graph, const PathSet* paths) {
  Box box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto grow = [&box](Point2 p) {
    box.x_min = std::min(box.x_min, p.x);
    box.x_max = std::max(box.x_max, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.y_max = std::max(box.y_max, p.y);
  };
  for (const Vertex& v : graph.vertices()) grow(v.pos);
  if (paths) {
    for (const Polyline& path : paths->paths)
      for (const Point2& p : path.points()) grow(p);
  }
  if (box.x_min > box.x_max) return {-1.0, 1.0, -1.0, 1.0};
  return box;
}

}  // namespace

std::string render_svg(const LaneGraph& graph, const PathSet* paths, const SvgOptions& options) {
  const Box box = options.extent ? *options.extent : bounding_box(graph, paths);
  const double s = options.scale;
  const double m = options.margin_px;
  const double width = (box.x_max - box.x_min) * s + 2.0 * m;
  const double height = (box.y_max - box.y_min) * s + 2.0 * m;
  // Ego frame: +x right, +y forward (up on the page).
  auto px = [&](Point2 p) { return num((p.x - box.x_min) * s + m); };
  auto py = [&](Point2 p) { return num((box.y_max - p.y) * s + m); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/>"
         "</marker></defs>\n";
  out += "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"white\" stroke=\"#999\"/>\n";

  if (paths) {
    out += "<g class=\"paths\" fill=\"none\" stroke-width=\"2\" stroke-opacity=\"0.7\">\n";
    for (std::size_t i = 0; i < paths->size(); ++i) {
      out += "<polyline class=\"path\" stroke=\"" + std::string(kPalette[i % kPalette.size()]) + "\" points=\"";
      const auto& pts = paths->paths[i].points();
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += " ";
        out += px(pts[k]) + "," + py(pts[k]);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }

  out += "<g class=\"edges\" stroke=\"#333\" stroke-width=\"1\">\n";
  for (const Edge& e : graph.edges()) {
    if (!graph.contains(e.from) || !graph.contains(e.to)) continue;
    const Point2 a = graph.position(e.from);
    const Point2 b = graph.position(e.to);
    out += "<line class=\"edge\" x1=\"" + px(a) + "\" y1=\"" + py(a) + "\" x2=\"" + px(b) + "\" y2=\"" + py(b) +
           "\" marker-end=\"url(#arrow)\"/>\n";
  }
  out += "</g>\n";

  if (options.draw_vertices) {
    out += "<g class=\"vertices\" fill=\"#333\">\n";
    for (const Vertex& v : graph.vertices())
      out += "<circle class=\"vertex\" cx=\"" + px(v.pos) + "\" cy=\"" + py(v.pos) + "\" r=\"2\"/>\n";
    out += "</g>\n";
  }

  // Junctions need a well-formed edge list; skip highlighting otherwise.
  bool edges_ok = true;
  for (const Edge& e : graph.edges()) edges_ok = edges_ok && graph.contains(e.from) && graph.contains(e.to);
  if (edges_ok && !graph.empty()) {
    out += "<g class=\"junctions\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\">\n";
    for (VertexId id : junctions(graph)) {
      const Point2 p = graph.position(id);
      out += "<circle class=\"junction\" cx=\"" + px(p) + "\" cy=\"" + py(p) + "\" r=\"6\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace lanegraph
