#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lanegraph::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

struct G2pOptions {
  std::string graph;
  std::string out;
  std::size_t cap = 256;
};

struct P2gOptions {
  std::string paths;
  std::string out;
  double step = 0.15;
  double merge_radius = 0.0;
};

struct EvalOptions {
  std::vector<std::string> pred;
  std::vector<std::string> gt;
  bool undirected = false;
  bool junction = false;
  double spacing = 0.15;
  double threshold = 0.45;
  double traverse = 7.5;
  bool json = false;
  std::size_t jobs = 1;
};

struct SynthOptions {
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
};

struct PerturbOptions {
  std::string paths;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double drop = 0.0;
  double truncate = 0.0;
  double spurious = 0.0;
  std::string out;
};

struct RenderOptions {
  std::string graph;
  std::optional<std::string> paths;
  std::string out;
};

struct RoundtripOptions {
  std::string graph;
  bool json = false;
  std::size_t cap = 256;
};

int run_g2p(const G2pOptions& o, std::ostream& out, std::ostream& err);
int run_p2g(const P2gOptions& o, std::ostream& out, std::ostream& err);
int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err);
int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err);
int run_perturb(const PerturbOptions& o, std::ostream& out, std::ostream& err);
int run_render(const RenderOptions& o, std::ostream& out, std::ostream& err);
int run_roundtrip(const RoundtripOptions& o, std::ostream& out, std::ostream& err);

// Worker count: LANEGRAPH_JOBS when set and valid, else hardware concurrency.
std::size_t default_jobs();

}  // namespace lanegraph::cli
