#include "commands.h"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include "lanegraph/errors.h"
#include "lanegraph/graph2path.h"
#include "lanegraph/io.h"
#include "lanegraph/path2graph.h"
#include "lanegraph/svg.h"
#include "lanegraph/synth.h"
#include "lanegraph/topo_metrics.h"

namespace lanegraph::cli {
namespace {

using nlohmann::json;

// Runs `body`, mapping library errors to exit codes and a one-line message.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: parse error at " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

io::GraphDocument load_graph_file(const std::string& path) {
  try {
    return io::load_graph(io::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.field_path(), e.message());
  }
}

io::PathDocument load_paths_file(const std::string& path) {
  try {
    return io::load_paths(io::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.field_path(), e.message());
  }
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

struct FrameResult {
  std::optional<TopoReport> report;
  std::string error;
};

FrameResult evaluate_frame(const std::string& pred_path, const std::string& gt_path, const EvalOptions& o) {
  FrameResult result;
  try {
    const io::GraphDocument pred = load_graph_file(pred_path);
    const io::GraphDocument gt = load_graph_file(gt_path);
    MetricConfig config;
    config.interpolation_spacing = o.spacing;
    config.match_threshold = o.threshold;
    config.traverse_dist = o.traverse;
    config.directed = !o.undirected;
    TopoReport report = o.junction ? junction_topo_metric(pred.graph, gt.graph, config)
                                   : topo_metric(pred.graph, gt.graph, config);
    auto flag = [](const io::Metadata& m) {
      const auto it = m.find("truncated");
      return it != m.end() && it->second == "true";
    };
    report.flags.truncated_input = flag(pred.metadata) || flag(gt.metadata);
    if (const auto it = pred.metadata.find("merge_radius"); it != pred.metadata.end())
      report.metadata["merge_radius"] = it->second;
    report.metadata["pred"] = pred_path;
    report.metadata["gt"] = gt_path;
    result.report = std::move(report);
  } catch (const ParseError& e) {
    result.error = std::string("parse error at ") + e.what();
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

}  // namespace

std::size_t default_jobs() {
  if (const char* env = std::getenv("LANEGRAPH_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_g2p(const G2pOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::GraphDocument doc = load_graph_file(o.graph);
    const PathSet paths = graph_to_paths(doc.graph, o.cap);
    if (paths.truncated) err << "warning: path cap " << o.cap << " reached; path set is truncated\n";
    io::write_file(o.out, io::save_paths(io::to_document(paths)));
    out << "wrote " << paths.size() << " paths to " << o.out << "\n";
    return kOk;
  });
}

int run_p2g(const P2gOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::PathDocument doc = load_paths_file(o.paths);
    const PathSet paths = io::to_path_set(doc);
    MergeConfig config;
    config.discretize_step = o.step;
    config.merge_radius = o.merge_radius;
    if (o.merge_radius >= o.step)
      err << "warning: merge radius " << fmt(o.merge_radius) << " is not below the step " << fmt(o.step)
          << "; consecutive vertices of one path will merge\n";
    io::GraphDocument graph{paths_to_graph(paths, config), {}};
    graph.metadata["merge_radius"] = fmt(o.merge_radius);
    graph.metadata["discretize_step"] = fmt(o.step);
    graph.metadata["truncated"] = paths.truncated ? "true" : "false";
    io::write_file(o.out, io::save_graph(graph));
    out << "wrote graph with " << graph.graph.num_vertices() << " vertices to " << o.out << "\n";
    return kOk;
  });
}

int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  if (o.pred.size() != o.gt.size()) {
    err << "error: --pred and --gt need the same number of files\n";
    return kInputError;
  }
  const std::size_t frames = o.pred.size();
  std::vector<FrameResult> results(frames);
  const std::size_t workers = std::clamp<std::size_t>(o.jobs, 1, std::max<std::size_t>(frames, 1));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < frames; i = next++) results[i] = evaluate_frame(o.pred[i], o.gt[i], o);
      });
    }
  }

  int code = kOk;
  json reports = json::array();
  for (std::size_t i = 0; i < frames; ++i) {
    const FrameResult& r = results[i];
    if (!r.report) {
      err << "error: frame " << i << " (" << o.pred[i] << " vs " << o.gt[i] << "): " << r.error << "\n";
      code = kInputError;
      continue;
    }
    if (r.report->flags.truncated_input)
      err << "warning: frame " << i << " was built from a truncated path set\n";
    if (o.json) {
      reports.push_back(json::parse(io::report_to_json(*r.report, -1)));
    } else {
      out << r.report->metric << (r.report->config.directed ? " directed" : " undirected") << " [" << o.pred[i]
          << " vs " << o.gt[i] << "]: precision=" << fmt(r.report->precision)
          << " recall=" << fmt(r.report->recall) << " f1=" << fmt(r.report->f1) << "\n";
    }
  }
  if (code != kOk) return code;
  if (o.json) out << (frames == 1 ? reports[0].dump(2) : reports.dump(2)) << "\n";
  return kOk;
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SynthConfig config;
    try {
      config = io::load_synth_config(io::read_file(o.config));
    } catch (const ParseError& e) {
      throw ParseError(o.config + ":" + e.field_path(), e.message());
    }
    config.seed = o.seed;
    io::GraphDocument doc{generate_graph(config), {}};
    doc.metadata["generator"] = "layered";
    doc.metadata["seed"] = std::to_string(o.seed);
    io::write_file(o.out, io::save_graph(doc));
    out << "wrote graph with " << doc.graph.num_vertices() << " vertices and " << doc.graph.num_edges()
        << " edges to " << o.out << "\n";
    return kOk;
  });
}

int run_perturb(const PerturbOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PathSet paths = io::to_path_set(load_paths_file(o.paths));
    PerturbConfig config;
    config.seed = o.seed;
    config.noise_sigma = o.sigma;
    config.drop_path_prob = o.drop;
    config.truncate_prob = o.truncate;
    config.spurious_path_prob = o.spurious;
    const PathSet perturbed = perturb_paths(paths, config);
    io::PathDocument doc = io::to_document(perturbed);
    doc.metadata["perturb_seed"] = std::to_string(o.seed);
    doc.metadata["noise_sigma"] = fmt(o.sigma);
    io::write_file(o.out, io::save_paths(doc));
    out << "wrote " << perturbed.size() << " paths to " << o.out << "\n";
    return kOk;
  });
}

int run_render(const RenderOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::GraphDocument graph = load_graph_file(o.graph);
    std::optional<PathSet> paths;
    if (o.paths) paths = io::to_path_set(load_paths_file(*o.paths));
    io::write_file(o.out, render_svg(graph.graph, paths ? &*paths : nullptr));
    out << "wrote " << o.out << "\n";
    return kOk;
  });
}

int run_roundtrip(const RoundtripOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::GraphDocument doc = load_graph_file(o.graph);
    const MergeConfig merge;
    const MetricConfig metric;
    const PathSet paths = graph_to_paths(doc.graph, o.cap);
    const LaneGraph rebuilt = paths_to_graph(paths, merge);
    const bool isomorphic =
        geometrically_equal(rebuilt, interpolate(doc.graph, merge.discretize_step), merge.quantum);
    TopoReport report = topo_metric(rebuilt, doc.graph, metric);
    report.flags.truncated_input = paths.truncated;
    const bool passed = isomorphic && std::abs(report.f1 - 1.0) <= 1e-9;

    if (o.json) {
      json j;
      j["graph"] = o.graph;
      j["num_paths"] = paths.size();
      j["truncated"] = paths.truncated;
      j["rebuilt_vertices"] = rebuilt.num_vertices();
      j["isomorphic"] = isomorphic;
      j["precision"] = report.precision;
      j["recall"] = report.recall;
      j["f1"] = report.f1;
      j["passed"] = passed;
      out << j.dump(2) << "\n";
    } else {
      out << "paths=" << paths.size() << " isomorphic=" << (isomorphic ? "yes" : "no")
          << " f1=" << fmt(report.f1) << (passed ? " PASS" : " FAIL") << "\n";
    }
    if (!isomorphic) err << "roundtrip: rebuilt graph differs from the interpolated input\n";
    if (std::abs(report.f1 - 1.0) > 1e-9) err << "roundtrip: F1 " << report.f1 << " != 1\n";
    return passed ? kOk : kCheckFailed;
  });
}

}  // namespace lanegraph::cli
