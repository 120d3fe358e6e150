#include <string>
#include <vector>

#include "albsim/errors.hpp"
#include "albsim/scheduler.hpp"

namespace albsim {

Worklist execute_lb_kernel(const Graph& g, const PrefixWork& prefix, Distribution distribution,
                           const KernelConfig& config, EdgeOperator& op, RoundMetrics& metrics) {
  Worklist pushed(g.num_vertices());
  if (prefix.empty()) return pushed;
  if (prefix.direction != op.direction()) {
    throw config_error("prefix direction does not match the operator");
  }

  const auto offsets = g.offsets(prefix.direction);
  const edge_t total = prefix.total_edges();
  std::vector<std::uint32_t> probes;

  for_each_thread(config, KernelKind::lb, metrics, [&](ThreadContext& t) {
    const EdgeAssignment mine = distribution == Distribution::cyclic
                                    ? assign_cyclic(total, config, t.coord().global_id)
                                    : assign_blocked(total, config, t.coord().global_id);
    // The k-th edge of every thread is searched in the same pass.
    for (edge_t pass = 0; pass < mine.size(); ++pass) {
      const edge_t global_edge = mine[pass];
      const EdgeOwner owner = find_owner(prefix, global_edge, &probes);
      t.charge_search(pass, probes);
      const edge_t e = offsets[owner.vertex] + owner.offset;
      try {
        if (auto next = op.apply(owner.vertex, e)) pushed.push(*next);
      } catch (const std::exception& ex) {
        throw error("lb edge " + std::to_string(global_edge) + " (vertex " +
                    std::to_string(owner.vertex) + ", offset " + std::to_string(owner.offset) +
                    "): " + ex.what());
      }
      t.charge_edges();
    }
  });
  return pushed;
}

}  // namespace albsim
