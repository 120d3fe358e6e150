#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "albsim/apps.hpp"
#include "albsim/graph.hpp"
#include "albsim/partition.hpp"
#include "albsim/scheduler.hpp"
#include "albsim/simt.hpp"

namespace albsim {

struct EngineOptions {
  std::size_t devices = 1;
  /// Round limit; 0 selects max(10 * |V|, 1000).
  std::uint64_t max_rounds = 0;
  std::optional<TwcCutoffs> cutoffs = std::nullopt;
};

/// One BSP round: metrics per device plus the label synchronization that
/// closed it.
struct RoundRecord {
  std::uint64_t round = 0;
  std::uint64_t frontier_size = 0;
  std::vector<RoundMetrics> devices;
  SyncStats sync;
};

struct RunResult {
  LabelArray labels;
  std::vector<RoundRecord> log;
  Partition partition;

  std::uint64_t rounds() const noexcept { return log.size(); }
};

/// Graph `app` actually runs on: symmetrized when the app needs it, with the
/// CSC mirror built for pull apps.
Graph prepare_graph(const Graph& g, const App& app);

/// Drives `app` to convergence. Each round splits the ascending frontier by
/// master device, runs `scheduler` on every device with its own metrics, then
/// lets the app synchronize labels. Throws convergence_error, including the
/// last round's counters, when the round limit is reached.
RunResult run(const Graph& g, App& app, const SchedulerKind& scheduler,
              const KernelConfig& config, const EngineOptions& options = {});

}  // namespace albsim
