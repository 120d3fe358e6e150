// Host-side cost of the simulator: one scheduler round over an RMAT frontier,
// owner lookup, and graph generation.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "albsim/rmat.hpp"
#include "albsim/scheduler.hpp"
#include "albsim/worklist.hpp"

namespace {

using namespace albsim;

class NullOperator : public EdgeOperator {
 public:
  Direction direction() const override { return Direction::push; }
  std::optional<vertex_t> apply(vertex_t, edge_t edge) override {
    benchmark::DoNotOptimize(edge);
    return std::nullopt;
  }
};

const Graph& rmat_graph() {
  static const Graph g = [] {
    RmatParams p;
    p.scale = 14;
    return generate_rmat(p);
  }();
  return g;
}

void BM_SchedulerRound(benchmark::State& state) {
  const SchedulerKind kinds[] = {SchedulerKind::vertex_based(), SchedulerKind::edge_based(),
                                 SchedulerKind::twc(), SchedulerKind::lb(),
                                 SchedulerKind::alb()};
  const SchedulerKind kind = kinds[state.range(0)];
  const Graph& g = rmat_graph();
  const KernelConfig config{8, 128, 32};
  std::vector<vertex_t> frontier(g.num_vertices());
  std::iota(frontier.begin(), frontier.end(), 0);
  NullOperator op;
  CooCache coo;
  for (auto _ : state) {
    RoundMetrics metrics(config);
    SchedulerContext ctx{g, config, op, metrics, &coo};
    benchmark::DoNotOptimize(run_scheduler(kind, frontier, ctx));
  }
  state.SetLabel(kind.name());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.num_edges()));
}
BENCHMARK(BM_SchedulerRound)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_LocateEdge(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<edge_t> cumulative(static_cast<std::size_t>(state.range(0)));
  edge_t sum = 0;
  for (auto& c : cumulative) c = sum += 1 + rng() % 64;
  std::vector<std::uint32_t> probes;
  edge_t e = 0;
  for (auto _ : state) {
    probes.clear();
    benchmark::DoNotOptimize(locate_edge(cumulative, e, &probes));
    e = (e + 7919) % sum;
  }
}
BENCHMARK(BM_LocateEdge)->RangeMultiplier(16)->Range(16, 1 << 20);

void BM_GenerateRmat(benchmark::State& state) {
  RmatParams p;
  p.scale = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_rmat(p));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 16 << p.scale);
}
BENCHMARK(BM_GenerateRmat)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
