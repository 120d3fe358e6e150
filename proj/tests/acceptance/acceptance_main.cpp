// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "albsim/cli/commands.hpp"
#include "albsim/report.hpp"
#include "albsim/rmat.hpp"
#include "albsim/worklist.hpp"
#include "support/oracles.hpp"
#include "support/run.hpp"

namespace albsim {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const std::vector<SchedulerKind> kEveryScheduler = {
    SchedulerKind::vertex_based(),          SchedulerKind::edge_based(),
    SchedulerKind::twc(),                   SchedulerKind::lb(Distribution::blocked),
    SchedulerKind::lb(Distribution::cyclic), SchedulerKind::alb(Distribution::cyclic),
    SchedulerKind::alb(Distribution::blocked)};

const std::vector<AppKind> kEveryApp = {AppKind::bfs, AppKind::sssp, AppKind::cc, AppKind::pr,
                                        AppKind::kcore};

class CountingOperator : public EdgeOperator {
 public:
  explicit CountingOperator(Direction d) : dir_(d) {}
  Direction direction() const override { return dir_; }
  std::optional<vertex_t> apply(vertex_t, edge_t) override {
    ++applied;
    return std::nullopt;
  }
  std::uint64_t applied = 0;

 private:
  Direction dir_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Graph skewed_rmat(unsigned scale, bool weighted) {
  RmatParams p;
  p.scale = scale;
  p.weighted = weighted;
  return generate_rmat(p);
}

Graph uniform_rmat(unsigned scale) {
  RmatParams p;
  p.scale = scale;
  p.a = p.b = p.c = p.d = 0.25;
  return generate_rmat(p);
}

// 1. Every scheduler (and both ALB distributions) yields the same labels.
Outcome semantic_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  struct Fixture {
    std::string name;
    Graph graph;
  };
  const std::vector<Fixture> fixtures = {
      {"rmat14", skewed_rmat(14, true)},
      {"path", testing::path_edges(16).graph()},
      {"star", testing::star_edges(40).graph()},
      {"triangle", testing::triangle_edges().graph()},
  };
  const KernelConfig config{8, 128, 32};  // T = 1024, so the rmat hub is huge
  std::size_t comparisons = 0;
  std::size_t lb_rounds = 0;
  for (const Fixture& f : fixtures) {
    for (AppKind app : kEveryApp) {
      const AppParams params{.source = 0, .k = 3};
      std::optional<LabelArray> reference;
      for (const SchedulerKind& kind : kEveryScheduler) {
        const RunResult r = testing::run_app(f.graph, app, params, kind, config);
        if (kind.type == SchedulerType::alb) {
          for (const RoundRecord& rec : r.log) lb_rounds += rec.devices[0].launches(KernelKind::lb) > 0;
        }
        if (!reference) {
          reference = r.labels;
          continue;
        }
        ++comparisons;
        const auto diff = reference->first_difference(r.labels, 1e-7);
        o.require(!diff, f.name + "/" + std::string(to_string(app)) + " " + kind.name() +
                             " differs at vertex " + std::to_string(diff.value_or(0)));
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.require(lb_rounds > 0, "no ALB round launched the LB kernel");
  o.require(elapsed < 60.0, "took " + num(elapsed) + " s (budget 60 s)");
  o.note(std::to_string(comparisons) + " label comparisons agree; " + std::to_string(lb_rounds) +
         " ALB rounds used LB; " + num(elapsed) + " s");
  return o;
}

// 2. Cyclic distribution with threshold = T keeps every warp at <= 2 paths per stride.
Outcome divergence_bound() {
  Outcome o;
  const KernelConfig config{2, 64, 32};  // T = 128
  testing::EdgeList el{3000, {}, {}, {}};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<vertex_t> pick(0, 2999);
  const std::vector<edge_t> hub_degrees{128, 129, 150, 200, 255, 256, 300, 333, 400, 513};
  for (vertex_t h = 0; h < hub_degrees.size(); ++h) {
    for (edge_t i = 0; i < hub_degrees[h]; ++i) el.add(h, pick(rng));
  }
  for (vertex_t v = 10; v < 3000; ++v) el.add(v, pick(rng));
  const Graph g = el.graph();

  std::vector<vertex_t> frontier(g.num_vertices());
  std::iota(frontier.begin(), frontier.end(), 0);
  CountingOperator op(Direction::push);
  RoundMetrics m(config);
  SchedulerContext ctx{g, config, op, m};
  run_scheduler(SchedulerKind::alb(Distribution::cyclic), frontier, ctx);
  o.require(m.launches(KernelKind::lb) == 1, "LB kernel did not run");
  const std::uint32_t worst = m.max_pass_paths();
  o.require(worst <= 2, "a warp took " + std::to_string(worst) + " paths in one stride");

  // Also across every round of a full sssp run on the same fixture.
  const RunResult run = testing::run_app(g, AppKind::sssp, {}, SchedulerKind::alb(), config);
  std::uint32_t run_worst = 0;
  for (const RoundRecord& rec : run.log) run_worst = std::max(run_worst, rec.devices[0].max_pass_paths());
  o.require(run_worst <= 2, "sssp run: a warp took " + std::to_string(run_worst) + " paths");
  o.note(std::to_string(hub_degrees.size()) + " huge vertices; max paths per warp-stride " +
         std::to_string(std::max(worst, run_worst)));
  return o;
}

// 3. Blocked distribution needs >= 4x the search accesses of cyclic when e >= 64 T.
Outcome access_separation() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const KernelConfig config{2, 128, 32};  // T = 256
  const edge_t t = config.total_threads();
  testing::EdgeList el{5000, {}, {}, {}};
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<vertex_t> pick(0, 4999);
  std::uniform_int_distribution<edge_t> extra(0, t / 4);
  const vertex_t hubs = 64;
  edge_t e = 0;
  for (vertex_t h = 0; h < hubs; ++h) {
    const edge_t degree = t + extra(rng);
    e += degree;
    for (edge_t i = 0; i < degree; ++i) el.add(h, pick(rng));
  }
  const Graph g = el.graph();
  std::vector<vertex_t> frontier(hubs);
  std::iota(frontier.begin(), frontier.end(), 0);

  auto accesses = [&](Distribution d) {
    CountingOperator op(Direction::push);
    RoundMetrics m(config);
    SchedulerContext ctx{g, config, op, m};
    run_scheduler(SchedulerKind::alb(d), frontier, ctx);
    return m.search_memory_accesses;
  };
  const std::uint64_t cyclic = accesses(Distribution::cyclic);
  const std::uint64_t blocked = accesses(Distribution::blocked);
  const double ratio = cyclic == 0 ? 0.0 : static_cast<double>(blocked) / static_cast<double>(cyclic);
  const double elapsed = seconds_since(start);
  o.require(e >= 64 * t, "fixture too small: e = " + std::to_string(e));
  o.require(ratio >= 4.0, "blocked/cyclic = " + num(ratio));
  o.require(elapsed < 10.0, "took " + num(elapsed) + " s (budget 10 s)");
  o.note("e = " + std::to_string(e) + " (" + num(static_cast<double>(e) / t) + " T); cyclic " +
         std::to_string(cyclic) + ", blocked " + std::to_string(blocked) + ", ratio " + num(ratio));
  return o;
}

// 4. On a skewed rmat sssp round holding a huge vertex, ALB balances CTAs and TWC does not.
Outcome load_balance() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Graph g = skewed_rmat(16, true);
  const KernelConfig config{8, 128, 32};  // T = 1024
  const RunResult alb = testing::run_app(g, AppKind::sssp, {}, SchedulerKind::alb(), config);
  const RunResult twc = testing::run_app(g, AppKind::sssp, {}, SchedulerKind::twc(), config);
  o.require(alb.rounds() == twc.rounds(), "round counts differ");
  std::optional<std::size_t> round;
  for (std::size_t i = 0; i < alb.log.size() && !round; ++i) {
    if (alb.log[i].devices[0].launches(KernelKind::lb) > 0) round = i;
  }
  o.require(round.has_value(), "no round contained a huge vertex");
  if (round) {
    const RoundSummary a = summarize_round(alb.log[*round]);
    const RoundSummary b = summarize_round(twc.log[*round]);
    o.require(a.cta.cv < 0.5 * b.cta.cv, "ALB CV " + num(a.cta.cv) + " vs TWC CV " + num(b.cta.cv));
    o.require(a.cta.max_mean <= 2.0, "ALB max/mean " + num(a.cta.max_mean));
    o.require(b.cta.max_mean >= 5.0, "TWC max/mean " + num(b.cta.max_mean));
    o.note("round " + std::to_string(*round) + ": ALB CV " + num(a.cta.cv) + ", max/mean " +
           num(a.cta.max_mean) + "; TWC CV " + num(b.cta.cv) + ", max/mean " + num(b.cta.max_mean));
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, "took " + num(elapsed) + " s (budget 30 s)");
  o.note("max degree " + std::to_string(g.max_degree(Direction::push)) + ", T = " +
         std::to_string(config.total_threads()) + "; " + num(elapsed) + " s");
  return o;
}

// 5. With no huge vertex ALB launches no LB kernel and matches TWC counter for counter.
Outcome zero_overhead() {
  Outcome o;
  const Graph g = uniform_rmat(12);
  const KernelConfig config;  // T = 21504
  o.require(g.max_degree(Direction::push) < config.total_threads(), "fixture has a huge vertex");
  std::size_t rounds = 0;
  for (AppKind app : {AppKind::sssp, AppKind::pr}) {
    const RunResult alb = testing::run_app(g, app, {}, SchedulerKind::alb(), config);
    const RunResult twc = testing::run_app(g, app, {}, SchedulerKind::twc(), config);
    o.require(alb.rounds() == twc.rounds(), std::string(to_string(app)) + ": round counts differ");
    for (std::size_t i = 0; i < std::min(alb.rounds(), twc.rounds()); ++i) {
      const RoundMetrics& a = alb.log[i].devices[0];
      o.require(a.launches(KernelKind::lb) == 0, "lb launched in round " + std::to_string(i));
      o.require(a.per_cta_edges == twc.log[i].devices[0].per_cta_edges,
                std::string(to_string(app)) + ": per-CTA counters differ in round " +
                    std::to_string(i));
      o.require(a == twc.log[i].devices[0], "round metrics differ in round " + std::to_string(i));
      ++rounds;
    }
  }
  o.note(std::to_string(rounds) + " rounds identical to TWC (sssp, pr)");
  return o;
}

// 6. Threshold sweep on low-skew graphs is flat; thresholds beyond max degree are TWC.
Outcome sweep_flatness() {
  Outcome o;
  const KernelConfig config;
  RmatParams mild;
  mild.scale = 14;
  mild.weighted = true;
  mild.a = 0.45;
  mild.b = mild.c = 0.22;
  mild.d = 0.11;
  RmatParams uniform = mild;
  uniform.a = uniform.b = uniform.c = uniform.d = 0.25;
  for (const auto& [name, params] : {std::pair{"uniform", uniform}, std::pair{"mild", mild}}) {
    const Graph g = generate_rmat(params);
    const edge_t max_degree = g.max_degree(Direction::push);
    const RunResult twc = testing::run_app(g, AppKind::sssp, {}, SchedulerKind::twc(), config);
    std::vector<double> cvs;
    unsigned below = 0;
    for (unsigned p = 8; p <= 18; ++p) {
      const edge_t threshold = edge_t{1} << p;
      const RunResult r = testing::run_app(
          g, AppKind::sssp, {}, SchedulerKind::alb(Distribution::cyclic, threshold), config);
      cvs.push_back(report(r.log).aggregate_cta.cv);
      if (threshold <= max_degree) {
        ++below;
        continue;
      }
      bool same = r.rounds() == twc.rounds();
      for (std::size_t i = 0; same && i < r.rounds(); ++i) {
        same = r.log[i].devices[0] == twc.log[i].devices[0];
      }
      o.require(same, std::string(name) + ": threshold 2^" + std::to_string(p) + " differs from TWC");
    }
    const auto [lo, hi] = std::minmax_element(cvs.begin(), cvs.end());
    const double spread = *lo > 0 ? (*hi - *lo) / *lo : (*hi > 0 ? 1.0 : 0.0);
    o.require(spread < 0.10, std::string(name) + ": CV spread " + num(spread));
    o.note(std::string(name) + ": max degree " + std::to_string(max_degree) + ", " +
           std::to_string(below) + " thresholds at or below it, CV in [" + num(*lo) + ", " +
           num(*hi) + "], spread " + num(spread));
  }
  return o;
}

// 7. Independent oracles on small instances.
Outcome oracles() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::size_t owner_cases = 0;
  auto check_owner = [&](const std::vector<edge_t>& cumulative, edge_t e) {
    const EdgeSlot got = locate_edge(cumulative, e);
    const auto [slot, offset] = testing::linear_owner(cumulative, e);
    ++owner_cases;
    return got.slot == slot && got.offset == offset;
  };
  bool owners_ok = true;
  for (std::size_t len = 1; len <= 64; ++len) {
    std::vector<edge_t> cumulative;
    edge_t sum = 0;
    for (std::size_t i = 0; i < len; ++i) cumulative.push_back(sum += 1 + rng() % 9);
    for (edge_t e = 0; e < sum; ++e) owners_ok = check_owner(cumulative, e) && owners_ok;
  }
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<edge_t> cumulative;
    edge_t sum = 0;
    const std::size_t len = 1 + rng() % 512;
    for (std::size_t i = 0; i < len; ++i) cumulative.push_back(sum += 1 + rng() % 500);
    owners_ok = check_owner(cumulative, rng() % sum) && owners_ok;
  }
  o.require(owners_ok, "find_owner disagrees with linear scan");

  std::size_t instances = 0;
  const std::vector<SchedulerKind> kinds = {SchedulerKind::alb(), SchedulerKind::lb(),
                                            SchedulerKind::vertex_based()};
  const KernelConfig config{2, 32, 32};  // T = 64 so small hubs still count as huge
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const vertex_t n = static_cast<vertex_t>(64 + seed * 32);
    testing::EdgeList el = testing::random_edges(n, 4 * n, seed);
    for (vertex_t i = 0; i < 80; ++i) el.add(0, static_cast<vertex_t>(rng() % n), 1 + rng() % 20);
    const Graph g = el.graph(true);
    for (const SchedulerKind& kind : kinds) {
      const std::string tag = " seed " + std::to_string(seed) + " " + kind.name();
      o.require(testing::run_app(g, AppKind::sssp, {.source = 0}, kind, config).labels.values ==
                    testing::dijkstra(g, 0),
                "sssp vs Dijkstra" + tag);
      o.require(testing::run_app(g, AppKind::cc, {}, kind, config).labels.values ==
                    testing::union_find_components(g),
                "cc vs union-find" + tag);
      const auto pr = testing::run_app(g, AppKind::pr, {.tolerance = 1e-10}, kind, config).labels;
      const auto oracle = testing::power_iteration(g, 0.85);
      double worst = 0.0;
      for (vertex_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(pr.reals[v] - oracle[v]));
      o.require(worst <= 1e-6, "pr vs power iteration off by " + num(worst) + tag);
      for (std::uint32_t k : {2u, 4u, 6u}) {
        o.require(testing::run_app(g, AppKind::kcore, {.k = k}, kind, config).labels.values ==
                      testing::peel(g, k),
                  "kcore vs peeling k=" + std::to_string(k) + tag);
      }
      ++instances;
    }
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, "took " + num(elapsed) + " s (budget 30 s)");
  o.note(std::to_string(owner_cases) + " find_owner cases; " + std::to_string(instances) +
         " graph/scheduler instances for sssp, cc, pr, kcore; " + num(elapsed) + " s");
  return o;
}

// 8. Multi-device runs agree with one device; ALB never raises the straggler ratio.
Outcome multi_device() {
  Outcome o;
  const Graph small = skewed_rmat(11, true);
  const KernelConfig config{8, 128, 32};
  for (AppKind app : kEveryApp) {
    const LabelArray one = testing::labels_of(small, app, {.k = 3}, SchedulerKind::alb(), config, 1);
    for (std::size_t d : {2u, 4u}) {
      const LabelArray many = testing::labels_of(small, app, {.k = 3}, SchedulerKind::alb(), config, d);
      o.require(one.equals(many, 0.0), std::string(to_string(app)) + " D=" + std::to_string(d) +
                                           " differs from D=1");
    }
  }

  const Graph skewed = skewed_rmat(14, true);
  std::size_t rounds = 0;
  double worst_gap = 0.0;
  for (std::size_t d : {2u, 4u}) {
    const RunResult alb = testing::run_app(skewed, AppKind::sssp, {}, SchedulerKind::alb(), config, d);
    const RunResult twc = testing::run_app(skewed, AppKind::sssp, {}, SchedulerKind::twc(), config, d);
    o.require(alb.labels.equals(twc.labels), "ALB and TWC labels differ at D=" + std::to_string(d));
    o.require(alb.rounds() == twc.rounds(), "round counts differ");
    for (std::size_t i = 0; i < std::min(alb.rounds(), twc.rounds()); ++i) {
      const double a = summarize_round(alb.log[i]).straggler;
      const double b = summarize_round(twc.log[i]).straggler;
      worst_gap = std::max(worst_gap, a - b);
      o.require(a <= b + 1e-12, "D=" + std::to_string(d) + " round " + std::to_string(i) +
                                    ": ALB straggler " + num(a) + " > TWC " + num(b));
      ++rounds;
    }
  }
  o.note("labels equal for D in {1,2,4} on all apps; straggler ALB <= TWC in " +
         std::to_string(rounds) + " rounds");
  return o;
}

// 9. Identical run specs produce byte-identical report files.
Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "albsim_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> specs = {
      {"run", "--scale", "12", "--app", "sssp", "--weighted", "--scheduler", "alb", "--cta", "8",
       "--tpb", "128", "--devices", "2", "--seed", "3", "--name", "s"},
      {"run", "--scale", "11", "--app", "pr", "--scheduler", "lb", "--seed", "4", "--name", "s"},
      {"run", "--scale", "11", "--app", "kcore", "--k", "4", "--scheduler", "edge", "--devices",
       "4", "--name", "s"},
  };
  std::size_t files = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::vector<std::string> outputs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / (std::to_string(i) + "_" + std::to_string(rep));
      std::vector<std::string> args = specs[i];
      args.insert(args.begin(), "albsim");
      args.push_back("--out");
      args.push_back(dir.string());
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
      o.require(code == 0, "spec " + std::to_string(i) + " failed: " + err.str());
      std::string bytes;
      for (const char* suffix : {".cta.csv", ".warp.csv", ".round.csv", ".summary.json"}) {
        std::ifstream in(dir / (std::string("s") + suffix), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        bytes += ss.str();
        bytes += '\0';
        files += rep;
      }
      outputs.push_back(bytes);
    }
    o.require(outputs[0] == outputs[1], "spec " + std::to_string(i) + " outputs differ");
  }
  fs::remove_all(root);
  o.note(std::to_string(files) + " report files byte-identical across repeated runs");
  return o;
}

}  // namespace
}  // namespace albsim

int main() {
  using namespace albsim;
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1", "semantic equivalence", semantic_equivalence},
      {"2", "divergence bound", divergence_bound},
      {"3", "access-count separation", access_separation},
      {"4", "load-balance improvement", load_balance},
      {"5", "zero-overhead degeneration", zero_overhead},
      {"6", "threshold sweep flatness", sweep_flatness},
      {"7", "oracles", oracles},
      {"8", "multi-device", multi_device},
      {"9", "determinism", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
