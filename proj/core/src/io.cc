#include "lanegraph/io.h"

#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lanegraph/errors.h"

namespace lanegraph::io {
namespace {

using nlohmann::json;

json parse_json(const std::string& bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON (") + e.what() + ")");
  }
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(child(path, key), "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "expected a finite number");
  return d;
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<std::int64_t>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

void check_schema(const json& root, const char* expected) {
  const json& version = require(root, "schema_version", "$");
  if (!version.is_string()) throw ParseError("$.schema_version", "expected a string");
  const std::string got = version.get<std::string>();
  if (got != expected)
    throw ParseError("$.schema_version",
                     "unsupported schema version '" + got + "' (this build reads '" + expected + "')");
}

Metadata read_metadata(const json& root) {
  Metadata meta;
  const auto it = root.find("metadata");
  if (it == root.end()) return meta;
  if (!it->is_object()) throw ParseError("$.metadata", "expected an object of strings");
  for (const auto& [key, value] : it->items()) {
    if (!value.is_string()) throw ParseError("$.metadata." + key, "expected a string");
    meta[key] = value.get<std::string>();
  }
  return meta;
}

Point2 read_point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ParseError(path, "expected [x, y]");
  return {as_number(v[0], item(path, 0)), as_number(v[1], item(path, 1))};
}

std::string digest_hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, d);
  return buf;
}

}  // namespace

std::string save_graph(const GraphDocument& doc) {
  json root;
  root["schema_version"] = kGraphSchema;
  json vertices = json::array();
  for (const Vertex& v : doc.graph.vertices()) vertices.push_back({{"id", v.id}, {"x", v.pos.x}, {"y", v.pos.y}});
  root["vertices"] = std::move(vertices);
  json edges = json::array();
  for (const Edge& e : doc.graph.edges()) edges.push_back(json::array({e.from, e.to}));
  root["edges"] = std::move(edges);
  root["metadata"] = doc.metadata;
  return root.dump(1) + "\n";
}

GraphDocument load_graph(const std::string& bytes) {
  const json root = parse_json(bytes);
  if (!root.is_object()) throw ParseError("$", "expected a graph document object");
  check_schema(root, kGraphSchema);
  GraphDocument doc;
  const json& vertices = as_array(require(root, "vertices", "$"), "$.vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string p = item("$.vertices", i);
    const json& v = vertices[i];
    const VertexId id = as_integer(require(v, "id", p), child(p, "id"));
    const double x = as_number(require(v, "x", p), child(p, "x"));
    const double y = as_number(require(v, "y", p), child(p, "y"));
    doc.graph.add_vertex(id, {x, y});
  }
  const json& edges = as_array(require(root, "edges", "$"), "$.edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = item("$.edges", i);
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(p, "expected [from, to]");
    doc.graph.add_edge(as_integer(e[0], item(p, 0)), as_integer(e[1], item(p, 1)));
  }
  doc.metadata = read_metadata(root);
  return doc;
}

std::string save_paths(const PathDocument& doc) {
  json root;
  root["schema_version"] = kPathsSchema;
  json paths = json::array();
  for (const PathEntry& entry : doc.paths) {
    json pts = json::array();
    for (const Point2& p : entry.points) pts.push_back(json::array({p.x, p.y}));
    paths.push_back({{"kind", entry.kind == PathKind::kBezier ? "bezier" : "polyline"}, {"points", std::move(pts)}});
  }
  root["paths"] = std::move(paths);
  root["metadata"] = doc.metadata;
  return root.dump(1) + "\n";
}

PathDocument load_paths(const std::string& bytes) {
  const json root = parse_json(bytes);
  if (!root.is_object()) throw ParseError("$", "expected a path document object");
  check_schema(root, kPathsSchema);
  PathDocument doc;
  const json& paths = as_array(require(root, "paths", "$"), "$.paths");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string p = item("$.paths", i);
    PathEntry entry;
    const json& kind = require(paths[i], "kind", p);
    if (kind == "polyline") {
      entry.kind = PathKind::kPolyline;
    } else if (kind == "bezier") {
      entry.kind = PathKind::kBezier;
    } else {
      throw ParseError(child(p, "kind"), "expected \"polyline\" or \"bezier\"");
    }
    const std::string pp = child(p, "points");
    const json& pts = as_array(require(paths[i], "points", p), pp);
    if (pts.size() < 2) throw ParseError(pp, "a path needs at least two points");
    for (std::size_t k = 0; k < pts.size(); ++k) entry.points.push_back(read_point(pts[k], item(pp, k)));
    doc.paths.push_back(std::move(entry));
  }
  doc.metadata = read_metadata(root);
  return doc;
}

PathDocument to_document(const PathSet& paths) {
  PathDocument doc;
  for (const Polyline& path : paths.paths) doc.paths.push_back({PathKind::kPolyline, path.points()});
  doc.metadata["truncated"] = paths.truncated ? "true" : "false";
  doc.metadata["source_graph_digest"] = digest_hex(paths.source_graph_digest);
  return doc;
}

PathSet to_path_set(const PathDocument& doc, std::size_t bezier_samples) {
  PathSet set;
  for (std::size_t i = 0; i < doc.paths.size(); ++i) {
    const PathEntry& entry = doc.paths[i];
    try {
      if (entry.kind == PathKind::kBezier) {
        const std::vector<double> t = uniform_parameters(bezier_samples);
        set.paths.emplace_back(bezier_sample(BezierPath(entry.points), t));
      } else {
        set.paths.emplace_back(entry.points);
      }
    } catch (const Error& e) {
      throw ParseError(item("$.paths", i) + ".points", e.what());
    }
  }
  if (const auto it = doc.metadata.find("truncated"); it != doc.metadata.end()) set.truncated = it->second == "true";
  if (const auto it = doc.metadata.find("source_graph_digest"); it != doc.metadata.end()) {
    set.source_graph_digest = std::strtoull(it->second.c_str(), nullptr, 16);
  }
  return set;
}

SynthConfig load_synth_config(const std::string& bytes) {
  const json root = parse_json(bytes);
  if (!root.is_object()) throw ParseError("$", "expected a configuration object");
  static const std::set<std::string> known = {"bounds",       "num_roots",  "max_depth", "fork_prob",
                                              "merge_prob",   "min_edge_len", "lane_width", "max_lanes",
                                              "position_jitter", "max_vertices"};
  for (const auto& [key, value] : root.items()) {
    if (!known.contains(key)) throw ParseError("$." + key, "unknown configuration key");
  }
  SynthConfig c;
  auto count = [&](const char* key, std::size_t& out) {
    if (const auto it = root.find(key); it != root.end()) {
      const std::int64_t v = as_integer(*it, std::string("$.") + key);
      if (v < 0) throw ParseError(std::string("$.") + key, "expected a non-negative integer");
      out = static_cast<std::size_t>(v);
    }
  };
  auto real = [&](const char* key, double& out) {
    if (const auto it = root.find(key); it != root.end()) out = as_number(*it, std::string("$.") + key);
  };
  if (const auto it = root.find("bounds"); it != root.end()) {
    const json& bj = *it;
    if (!bj.is_object()) throw ParseError("$.bounds", "expected an object");
    c.bounds.x_min = as_number(require(bj, "x_min", "$.bounds"), "$.bounds.x_min");
    c.bounds.x_max = as_number(require(bj, "x_max", "$.bounds"), "$.bounds.x_max");
    c.bounds.y_min = as_number(require(bj, "y_min", "$.bounds"), "$.bounds.y_min");
    c.bounds.y_max = as_number(require(bj, "y_max", "$.bounds"), "$.bounds.y_max");
  }
  count("num_roots", c.num_roots);
  count("max_depth", c.max_depth);
  real("fork_prob", c.fork_prob);
  real("merge_prob", c.merge_prob);
  real("min_edge_len", c.min_edge_len);
  real("lane_width", c.lane_width);
  count("max_lanes", c.max_lanes);
  real("position_jitter", c.position_jitter);
  count("max_vertices", c.max_vertices);
  return c;
}

std::string save_synth_config(const SynthConfig& c) {
  json root;
  root["bounds"] = {{"x_min", c.bounds.x_min}, {"x_max", c.bounds.x_max},
                    {"y_min", c.bounds.y_min}, {"y_max", c.bounds.y_max}};
  root["num_roots"] = c.num_roots;
  root["max_depth"] = c.max_depth;
  root["fork_prob"] = c.fork_prob;
  root["merge_prob"] = c.merge_prob;
  root["min_edge_len"] = c.min_edge_len;
  root["lane_width"] = c.lane_width;
  root["max_lanes"] = c.max_lanes;
  root["position_jitter"] = c.position_jitter;
  root["max_vertices"] = c.max_vertices;
  return root.dump(2) + "\n";
}

std::string report_to_json(const TopoReport& r, int indent) {
  json root;
  root["metric"] = r.metric;
  root["precision"] = r.precision;
  root["recall"] = r.recall;
  root["f1"] = r.f1;
  json anchors = json::array();
  for (const AnchorScore& a : r.per_anchor) {
    anchors.push_back({{"gt_anchor", a.gt_anchor},
                       {"pred_anchor", a.pred_anchor ? json(*a.pred_anchor) : json(nullptr)},
                       {"precision", a.precision},
                       {"recall", a.recall}});
  }
  root["per_anchor"] = std::move(anchors);
  root["config"] = {{"interpolation_spacing", r.config.interpolation_spacing},
                    {"match_threshold", r.config.match_threshold},
                    {"traverse_dist", r.config.traverse_dist},
                    {"directed", r.config.directed}};
  root["flags"] = {{"truncated_input", r.flags.truncated_input},
                   {"empty_graph_convention", r.flags.empty_graph_convention},
                   {"degenerate", r.flags.degenerate}};
  root["num_pred_vertices"] = r.num_pred_vertices;
  root["num_gt_vertices"] = r.num_gt_vertices;
  root["num_pairs"] = r.num_pairs;
  root["metadata"] = r.metadata;
  return root.dump(indent);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << bytes;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace lanegraph::io
