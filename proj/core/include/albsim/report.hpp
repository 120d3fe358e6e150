#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "albsim/engine.hpp"

namespace albsim {

/// Balance of a load vector. An all-zero vector reports max/mean 1 and CV 0.
struct LoadStats {
  std::uint64_t max = 0;
  double mean = 0.0;
  double max_mean = 1.0;
  double cv = 0.0;  // population standard deviation / mean
};

LoadStats load_stats(std::span<const std::uint64_t> loads);

struct RoundSummary {
  std::uint64_t round = 0;
  std::uint64_t frontier = 0;
  std::uint64_t active_edges = 0;
  std::uint64_t edges = 0;
  LoadStats cta;             // over every CTA of every device
  double straggler = 1.0;    // max/mean over devices of the busiest-CTA load
  std::uint64_t search_accesses = 0;
  std::uint64_t search_paths = 0;
  std::uint32_t max_pass_paths = 0;
  std::array<std::uint64_t, kKernelKinds> launches{};
  std::uint64_t degree_reads = 0;
  std::uint64_t coo_bytes = 0;
  std::uint64_t thread_critical_path = 0;
  std::uint64_t mirror_updates = 0;
};

struct Histogram {
  std::vector<double> bin_edges;  // bins + 1 entries
  std::vector<std::uint64_t> counts;
};

struct RunSummary {
  std::uint64_t rounds = 0;
  std::vector<RoundSummary> per_round;
  std::vector<std::uint64_t> cta_totals;  // summed over rounds and devices
  LoadStats aggregate_cta;
  Histogram cta_histogram;
  double max_round_cv = 0.0;
  double max_round_max_mean = 1.0;
  double max_straggler = 1.0;
  std::uint64_t edges = 0;
  std::uint64_t search_accesses = 0;
  std::uint64_t search_paths = 0;
  std::uint32_t max_pass_paths = 0;
  std::array<std::uint64_t, kKernelKinds> launches{};
  std::uint64_t mirror_updates = 0;
};

RoundSummary summarize_round(const RoundRecord& record);
RunSummary report(const std::vector<RoundRecord>& log, std::size_t histogram_bins = 10);

/// Schema version of <run>.summary.json.
inline constexpr int kSummarySchemaVersion = 1;

/// Writes <name>.cta.csv, <name>.warp.csv, <name>.round.csv and
/// <name>.summary.json into `dir`, creating it if needed. `run_info` is copied
/// into the summary's "run" object; values are emitted as strings.
void write_reports(const std::filesystem::path& dir, const std::string& name,
                   const RunResult& result, const std::map<std::string, std::string>& run_info);

}  // namespace albsim
