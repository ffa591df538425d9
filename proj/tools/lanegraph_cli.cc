// lanegraph: decompose, rebuild, perturb, score and draw lane graphs.

#include <CLI11.hpp>

#include <iostream>

#include "commands.h"

int main(int argc, char** argv) {
  using namespace lanegraph::cli;

  CLI::App app{"Path-wise lane graph toolkit"};
  app.require_subcommand(1);

  G2pOptions g2p;
  auto* g2p_cmd = app.add_subcommand("g2p", "Decompose a lane graph into root-to-leaf paths");
  g2p_cmd->add_option("--graph", g2p.graph, "Input graph JSON")->required();
  g2p_cmd->add_option("--out", g2p.out, "Output paths JSON")->required();
  g2p_cmd->add_option("--cap", g2p.cap, "Maximum paths per (root, leaf) pair")->check(CLI::PositiveNumber);

  P2gOptions p2g;
  auto* p2g_cmd = app.add_subcommand("p2g", "Rebuild a lane graph from paths");
  p2g_cmd->add_option("--paths", p2g.paths, "Input paths JSON")->required();
  p2g_cmd->add_option("--out", p2g.out, "Output graph JSON")->required();
  p2g_cmd->add_option("--step", p2g.step, "Discretization step, meters")->check(CLI::PositiveNumber);
  p2g_cmd->add_option("--merge-radius", p2g.merge_radius, "Merge radius, meters (0 = exact)")
      ->check(CLI::NonNegativeNumber);

  EvalOptions eval;
  eval.jobs = default_jobs();
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted graphs against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "Predicted graph JSON (one per frame)")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth graph JSON (one per frame)")->required();
  eval_cmd->add_flag("--undirected", eval.undirected, "Symmetrize both graphs before traversal");
  eval_cmd->add_flag("--junction", eval.junction, "Junction TOPO instead of TOPO");
  eval_cmd->add_option("--spacing", eval.spacing, "Interpolation spacing, meters")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--threshold", eval.threshold, "Vertex match threshold, meters")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--traverse", eval.traverse, "Subgraph traversal distance, meters")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--json", eval.json, "Print machine-readable JSON");
  eval_cmd->add_option("--jobs", eval.jobs, "Frames evaluated in parallel (default: $LANEGRAPH_JOBS or cores)")
      ->check(CLI::PositiveNumber);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic lane graph");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->required();
  synth_cmd->add_option("--config", synth.config, "Generator configuration JSON")->required();
  synth_cmd->add_option("--out", synth.out, "Output graph JSON")->required();

  PerturbOptions perturb;
  auto* perturb_cmd = app.add_subcommand("perturb", "Simulate a noisy prediction from paths");
  perturb_cmd->add_option("--paths", perturb.paths, "Input paths JSON")->required();
  perturb_cmd->add_option("--seed", perturb.seed, "Perturbation seed")->required();
  perturb_cmd->add_option("--sigma", perturb.sigma, "Per-point Gaussian noise, meters")
      ->required()
      ->check(CLI::NonNegativeNumber);
  perturb_cmd->add_option("--drop", perturb.drop, "Probability of dropping a path")->check(CLI::Range(0.0, 1.0));
  perturb_cmd->add_option("--truncate", perturb.truncate, "Probability of truncating a path")
      ->check(CLI::Range(0.0, 1.0));
  perturb_cmd->add_option("--spurious", perturb.spurious, "Probability of a spurious path per input path")
      ->check(CLI::Range(0.0, 1.0));
  perturb_cmd->add_option("--out", perturb.out, "Output paths JSON")->required();

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Draw a graph (and optional paths) as SVG");
  render_cmd->add_option("--graph", render.graph, "Input graph JSON")->required();
  render_cmd->add_option("--paths", render.paths, "Paths JSON to overlay");
  render_cmd->add_option("--out", render.out, "Output SVG")->required();

  RoundtripOptions roundtrip;
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "g2p -> p2g -> eval against itself; expects F1 = 1");
  roundtrip_cmd->add_option("--graph", roundtrip.graph, "Input graph JSON")->required();
  roundtrip_cmd->add_flag("--json", roundtrip.json, "Print machine-readable JSON");
  roundtrip_cmd->add_option("--cap", roundtrip.cap, "Maximum paths per (root, leaf) pair")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*g2p_cmd) return run_g2p(g2p, std::cout, std::cerr);
  if (*p2g_cmd) return run_p2g(p2g, std::cout, std::cerr);
  if (*eval_cmd) return run_eval(eval, std::cout, std::cerr);
  if (*synth_cmd) return run_synth(synth, std::cout, std::cerr);
  if (*perturb_cmd) return run_perturb(perturb, std::cout, std::cerr);
  if (*render_cmd) return run_render(render, std::cout, std::cerr);
  if (*roundtrip_cmd) return run_roundtrip(roundtrip, std::cout, std::cerr);
  return kInputError;
}
