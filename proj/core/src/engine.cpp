#include "albsim/engine.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

class DeviceOperator : public EdgeOperator {
 public:
  DeviceOperator(App& app, std::size_t device) : app_(app), device_(device) {}

  Direction direction() const override { return app_.direction(); }
  std::optional<vertex_t> apply(vertex_t active, edge_t edge) override {
    return app_.apply(device_, active, edge);
  }

 private:
  App& app_;
  std::size_t device_;
};

std::string diagnose(const std::vector<RoundRecord>& log, std::uint64_t limit,
                     std::size_t frontier) {
  std::ostringstream out;
  out << "no convergence after " << limit << " rounds; frontier still holds " << frontier
      << " vertices";
  if (!log.empty()) {
    const RoundRecord& last = log.back();
    out << "; last round " << last.round << ": frontier=" << last.frontier_size;
    for (std::size_t d = 0; d < last.devices.size(); ++d) {
      const RoundMetrics& m = last.devices[d];
      out << " [device " << d << " edges=" << m.edges_processed()
          << " active_edges=" << m.active_edges
          << " search_accesses=" << m.search_memory_accesses << "]";
    }
    out << " mirror_updates=" << last.sync.messages();
  }
  return out.str();
}

}  // namespace

Graph prepare_graph(const Graph& g, const App& app) {
  return build_csc(app.needs_symmetric() ? symmetrize(g) : g);
}

RunResult run(const Graph& g, App& app, const SchedulerKind& scheduler,
              const KernelConfig& config, const EngineOptions& options) {
  config.validate();
  if (options.devices == 0) throw config_error("device count must be at least 1");
  if (app.direction() == Direction::pull && !g.has_csc()) {
    throw config_error("pull application needs the CSC view; use prepare_graph");
  }

  RunResult result;
  result.partition = partition_graph(g, options.devices, app.direction());
  const std::uint64_t max_rounds =
      options.max_rounds != 0
          ? options.max_rounds
          : std::max<std::uint64_t>(std::uint64_t{10} * g.num_vertices(), 1000);

  CooCache coo;
  Worklist frontier = app.init(g, options.devices);
  while (!frontier.empty()) {
    if (result.log.size() >= max_rounds) {
      throw convergence_error(diagnose(result.log, max_rounds, frontier.size()));
    }
    app.begin_round(frontier);
    if (frontier.empty()) break;

    const std::vector<vertex_t> ordered = frontier.sorted();
    RoundRecord record;
    record.round = result.log.size();
    record.frontier_size = ordered.size();
    Worklist next(g.num_vertices(), Worklist::Representation::dense);
    for (std::size_t d = 0; d < options.devices; ++d) {
      const auto first = std::lower_bound(ordered.begin(), ordered.end(),
                                          result.partition.begin(d));
      const auto last = std::lower_bound(first, ordered.end(), result.partition.end(d));
      RoundMetrics metrics(config);
      DeviceOperator op(app, d);
      SchedulerContext ctx{g, config, op, metrics, &coo, options.cutoffs};
      next.merge(run_scheduler(scheduler, std::span<const vertex_t>(first, last), ctx));
      record.devices.push_back(std::move(metrics));
    }
    record.sync = app.end_round(result.partition, ordered, next);
    result.log.push_back(std::move(record));
    frontier = std::move(next);
  }
  result.labels = app.labels();
  return result;
}

}  // namespace albsim
