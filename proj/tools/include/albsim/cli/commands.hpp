#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "albsim/apps.hpp"
#include "albsim/engine.hpp"
#include "albsim/report.hpp"
#include "albsim/rmat.hpp"
#include "albsim/scheduler.hpp"
#include "albsim/simt.hpp"
#include "json.hpp"

namespace albsim::cli {

/// Everything needed to reproduce one run. Round-trips through JSON.
struct RunSpec {
  /// Edge-list or binary path, or "rmat" to generate.
  std::string input = "rmat";
  /// el, wel, bin or rmat; empty infers from the input.
  std::string format;
  RmatParams rmat;
  bool symmetrize = false;
  bool weighted = false;

  AppKind app = AppKind::sssp;
  AppParams params;
  SchedulerKind scheduler = SchedulerKind::alb();
  KernelConfig config;
  std::size_t devices = 1;
  std::uint64_t max_rounds = 0;

  std::string out = ".";
  std::string name;  // defaults to <app>-<scheduler>

  std::string run_name() const;
  std::map<std::string, std::string> info() const;

  nlohmann::ordered_json to_json() const;
  /// Missing keys keep their defaults. Throws config_error on bad values.
  static RunSpec from_json(const nlohmann::json& j);
};

/// "auto" clears the threshold, "inf" disables huge vertices.
std::optional<edge_t> parse_threshold(const std::string& text);
std::string threshold_name(const std::optional<edge_t>& threshold);

/// Raw input graph described by `spec` (before app-specific preparation).
Graph load_input(const RunSpec& spec);

struct Outcome {
  RunResult result;
  RunSummary summary;
};

/// Runs the spec on an already prepared graph.
Outcome execute(const RunSpec& spec, const Graph& prepared);

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

int cmd_run(const RunSpec& spec, std::ostream& out);
/// Runs every scheduler on the same input and checks their labels agree.
int cmd_compare(const RunSpec& spec, const std::vector<SchedulerKind>& schedulers,
                std::ostream& out);
/// Runs ALB once per threshold and writes <name>.sweep.csv.
int cmd_sweep(const RunSpec& spec, const std::vector<std::optional<edge_t>>& thresholds,
              std::ostream& out);
int cmd_convert(const RunSpec& spec, const std::string& output, const std::string& format,
                std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace albsim::cli
