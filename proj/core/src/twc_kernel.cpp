#include <string>
#include <vector>

#include "albsim/errors.hpp"
#include "albsim/scheduler.hpp"

namespace albsim {

namespace {

// Vertices of one bin bucketed by group (thread, warp or CTA), frontier order kept.
struct Grouped {
  std::vector<std::size_t> offsets;
  std::vector<vertex_t> vertices;

  std::span<const vertex_t> group(std::uint64_t g) const {
    return std::span<const vertex_t>(vertices).subspan(offsets[g], offsets[g + 1] - offsets[g]);
  }
};

Grouped group_by(const std::vector<BinnedVertex>& bin, std::uint64_t groups,
                 std::uint64_t threads_per_group) {
  Grouped out;
  out.offsets.assign(groups + 1, 0);
  for (const auto& b : bin) ++out.offsets[b.owner / threads_per_group + 1];
  for (std::uint64_t g = 0; g < groups; ++g) out.offsets[g + 1] += out.offsets[g];
  std::vector<std::size_t> cursor(out.offsets.begin(), out.offsets.end() - 1);
  out.vertices.resize(bin.size());
  for (const auto& b : bin) out.vertices[cursor[b.owner / threads_per_group]++] = b.vertex;
  return out;
}

}  // namespace

Worklist execute_twc_kernel(const Graph& g, const TwcBins& bins, const KernelConfig& config,
                            EdgeOperator& op, RoundMetrics& metrics) {
  Worklist pushed(g.num_vertices());
  if (bins.empty()) return pushed;

  const std::uint64_t threads = config.total_threads();
  for (const auto* bin : {&bins.small, &bins.medium, &bins.large}) {
    for (const auto& b : *bin) {
      if (b.owner >= threads) {
        throw range_error("binned vertex " + std::to_string(b.vertex) + " owned by thread " +
                          std::to_string(b.owner) + " of " + std::to_string(threads));
      }
    }
  }

  const Direction dir = op.direction();
  const auto offsets = g.offsets(dir);
  const Grouped small = group_by(bins.small, threads, 1);
  const Grouped medium = group_by(bins.medium, config.num_warps(), config.warp_size);
  const Grouped large = group_by(bins.large, config.num_ctas, config.threads_per_cta);

  auto process = [&](ThreadContext& t, vertex_t v, edge_t first, edge_t stride) {
    const edge_t begin = offsets[v];
    const edge_t degree = offsets[v + 1] - begin;
    for (edge_t j = first; j < degree; j += stride) {
      const edge_t e = begin + j;
      try {
        if (auto next = op.apply(v, e)) pushed.push(*next);
      } catch (const simulation_error&) {
        throw;
      } catch (const std::exception& ex) {
        throw error("twc edge " + std::to_string(e) + " of vertex " + std::to_string(v) + ": " +
                    ex.what());
      }
      t.charge_edges();
    }
  };

  for_each_thread(config, KernelKind::twc, metrics, [&](ThreadContext& t) {
    const ThreadCoord& c = t.coord();
    for (vertex_t v : large.group(c.cta_id)) process(t, v, c.local_id, config.threads_per_cta);
    for (vertex_t v : medium.group(c.warp_id)) process(t, v, c.lane_id, config.warp_size);
    for (vertex_t v : small.group(c.global_id)) process(t, v, 0, 1);
  });
  return pushed;
}

}  // namespace albsim
