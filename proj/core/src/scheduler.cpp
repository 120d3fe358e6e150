#include "albsim/scheduler.hpp"

#include <algorithm>
#include <string>

#include "albsim/errors.hpp"

namespace albsim {

std::string_view to_string(SchedulerType type) {
  switch (type) {
    case SchedulerType::vertex:
      return "vertex";
    case SchedulerType::edge:
      return "edge";
    case SchedulerType::twc:
      return "twc";
    case SchedulerType::lb:
      return "lb";
    case SchedulerType::alb:
      return "alb";
  }
  return "?";
}

std::string_view to_string(Distribution distribution) {
  return distribution == Distribution::cyclic ? "cyclic" : "blocked";
}

SchedulerKind SchedulerKind::parse(std::string_view name) {
  if (name == "vertex") return vertex_based();
  if (name == "edge") return edge_based();
  if (name == "twc") return twc();
  if (name == "lb" || name == "lb-blocked") return lb(Distribution::blocked);
  if (name == "lb-cyclic") return lb(Distribution::cyclic);
  if (name == "alb" || name == "alb-cyclic") return alb(Distribution::cyclic);
  if (name == "alb-blocked") return alb(Distribution::blocked);
  throw config_error("unknown scheduler '" + std::string(name) + "'");
}

std::string SchedulerKind::name() const {
  std::string out(to_string(type));
  if (type == SchedulerType::lb && distribution == Distribution::cyclic) out += "-cyclic";
  if (type == SchedulerType::alb && distribution == Distribution::blocked) out += "-blocked";
  return out;
}

edge_t SchedulerKind::resolved_threshold(const KernelConfig& config) const {
  const edge_t t = threshold.value_or(config.total_threads());
  return t == 0 ? 1 : t;
}

Inspection inspect(std::span<const vertex_t> frontier, const Graph& g, edge_t threshold,
                   Direction direction, const KernelConfig& config, RoundMetrics* metrics,
                   std::optional<TwcCutoffs> cutoffs) {
  if (threshold == 0) throw config_error("huge-vertex threshold must be at least 1");
  Inspection out;
  out.bins.cutoffs = cutoffs.value_or(TwcCutoffs::from(config));
  const std::uint64_t threads = config.total_threads();

  auto classify = [&](std::size_t position) {
    const vertex_t v = frontier[position];
    const edge_t degree = g.degree(v, direction);
    if (degree >= threshold) {
      out.huge.push_back(v);
      return;
    }
    const BinnedVertex binned{v, position % threads};
    if (degree < out.bins.cutoffs.small_max) {
      out.bins.small.push_back(binned);
    } else if (degree < out.bins.cutoffs.medium_max) {
      out.bins.medium.push_back(binned);
    } else {
      out.bins.large.push_back(binned);
    }
  };

  if (metrics == nullptr) {
    for (std::size_t i = 0; i < frontier.size(); ++i) classify(i);
    return out;
  }

  // The launch itself is simulated so its cost shows up in the kernel log.
  // Results are collected in frontier order, not thread order.
  for_each_thread(config, KernelKind::inspect, *metrics, [&](ThreadContext& t) {
    for (std::uint64_t i = t.coord().global_id; i < frontier.size(); i += threads) {
      metrics->degree_reads += 1;
    }
  });
  for (std::size_t i = 0; i < frontier.size(); ++i) classify(i);
  return out;
}

EdgeAssignment assign_cyclic(edge_t total_edges, const KernelConfig& config, std::uint64_t tid) {
  const std::uint64_t threads = config.total_threads();
  if (tid >= threads) throw range_error("thread id " + std::to_string(tid) + " out of range");
  const edge_t count = tid < total_edges ? (total_edges - tid + threads - 1) / threads : 0;
  return {tid, threads, count};
}

EdgeAssignment assign_blocked(edge_t total_edges, const KernelConfig& config, std::uint64_t tid) {
  const std::uint64_t threads = config.total_threads();
  if (tid >= threads) throw range_error("thread id " + std::to_string(tid) + " out of range");
  const edge_t chunk = (total_edges + threads - 1) / threads;
  const edge_t first = tid * chunk;
  if (first >= total_edges) return {total_edges, 1, 0};
  return {first, 1, std::min(chunk, total_edges - first)};
}

std::span<const vertex_t> CooCache::endpoints(const Graph& g, Direction direction) {
  const std::size_t slot = direction == Direction::push ? 0 : 1;
  if (graph_[slot] != &g || endpoints_[slot].size() != g.num_edges()) {
    const auto offsets = g.offsets(direction);
    auto& out = endpoints_[slot];
    out.resize(g.num_edges());
    for (vertex_t v = 0; v < g.num_vertices(); ++v) {
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                out.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]), v);
    }
    graph_[slot] = &g;
  }
  return endpoints_[slot];
}

std::uint64_t CooCache::footprint(const Graph& g) {
  const std::uint64_t per_edge = 2 * sizeof(vertex_t) + (g.weighted() ? sizeof(weight_t) : 0);
  return g.num_edges() * per_edge;
}

namespace {

Worklist run_vertex_based(std::span<const vertex_t> frontier, SchedulerContext& ctx) {
  const Direction dir = ctx.op.direction();
  const auto offsets = ctx.graph.offsets(dir);
  const std::uint64_t threads = ctx.config.total_threads();
  Worklist pushed(ctx.graph.num_vertices());
  for_each_thread(ctx.config, KernelKind::vertex, ctx.metrics, [&](ThreadContext& t) {
    for (std::uint64_t i = t.coord().global_id; i < frontier.size(); i += threads) {
      const vertex_t v = frontier[i];
      for (edge_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        if (auto next = ctx.op.apply(v, e)) pushed.push(*next);
        t.charge_edges();
      }
    }
  });
  return pushed;
}

// Topology-driven over a COO view: every thread scans an equal slice of all
// edges and applies those whose owning endpoint is active.
Worklist run_edge_based(std::span<const vertex_t> frontier, SchedulerContext& ctx) {
  const Direction dir = ctx.op.direction();
  CooCache local;
  CooCache& cache = ctx.coo != nullptr ? *ctx.coo : local;
  const auto owners = cache.endpoints(ctx.graph, dir);
  ctx.metrics.coo_bytes = CooCache::footprint(ctx.graph);

  std::vector<std::uint8_t> active(ctx.graph.num_vertices(), 0);
  for (vertex_t v : frontier) active[v] = 1;

  const edge_t total = ctx.graph.num_edges();
  Worklist pushed(ctx.graph.num_vertices());
  for_each_thread(ctx.config, KernelKind::edge, ctx.metrics, [&](ThreadContext& t) {
    for (edge_t e : assign_blocked(total, ctx.config, t.coord().global_id)) {
      const vertex_t owner = owners[e];
      if (active[owner] == 0) continue;
      if (auto next = ctx.op.apply(owner, e)) pushed.push(*next);
      t.charge_edges();
    }
  });
  return pushed;
}

std::vector<vertex_t> with_edges(std::span<const vertex_t> frontier, const Graph& g,
                                 Direction dir) {
  std::vector<vertex_t> out;
  out.reserve(frontier.size());
  for (vertex_t v : frontier) {
    if (g.degree(v, dir) > 0) out.push_back(v);
  }
  return out;
}

}  // namespace

Worklist run_scheduler(const SchedulerKind& kind, std::span<const vertex_t> frontier,
                       SchedulerContext& ctx) {
  const Direction dir = ctx.op.direction();
  const Graph& g = ctx.graph;
  ctx.metrics.active_vertices += frontier.size();
  for (vertex_t v : frontier) ctx.metrics.active_edges += g.degree(v, dir);
  if (frontier.empty()) return Worklist(g.num_vertices());

  switch (kind.type) {
    case SchedulerType::vertex:
      return run_vertex_based(frontier, ctx);
    case SchedulerType::edge:
      return run_edge_based(frontier, ctx);
    case SchedulerType::twc: {
      const Inspection split =
          inspect(frontier, g, kNoHugeVertices, dir, ctx.config, &ctx.metrics, ctx.cutoffs);
      return execute_twc_kernel(g, split.bins, ctx.config, ctx.op, ctx.metrics);
    }
    case SchedulerType::lb: {
      // Prefix over the whole frontier, built directly (no inspect launch).
      ctx.metrics.degree_reads += frontier.size();
      const PrefixWork prefix = compute_prefix(with_edges(frontier, g, dir), g, dir);
      return execute_lb_kernel(g, prefix, kind.distribution, ctx.config, ctx.op, ctx.metrics);
    }
    case SchedulerType::alb: {
      const Inspection split = inspect(frontier, g, kind.resolved_threshold(ctx.config), dir,
                                       ctx.config, &ctx.metrics, ctx.cutoffs);
      Worklist pushed(g.num_vertices());
      if (!split.huge.empty()) {
        const PrefixWork prefix = compute_prefix(split.huge, g, dir);
        pushed.merge(execute_lb_kernel(g, prefix, kind.distribution, ctx.config, ctx.op,
                                       ctx.metrics));
      }
      pushed.merge(execute_twc_kernel(g, split.bins, ctx.config, ctx.op, ctx.metrics));
      return pushed;
    }
  }
  throw config_error("unknown scheduler type");
}

}  // namespace albsim
