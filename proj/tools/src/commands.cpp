#include "albsim/cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "albsim/errors.hpp"
#include "albsim/graph_io.hpp"

namespace albsim::cli {

namespace {

std::string fmt(double value, const char* pattern = "%.6g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string infer_format(const RunSpec& spec) {
  if (!spec.format.empty()) return spec.format;
  if (spec.input == "rmat") return "rmat";
  const std::string ext = std::filesystem::path(spec.input).extension().string();
  if (ext == ".bin") return "bin";
  if (ext == ".wel") return "wel";
  return "el";
}

double label_tolerance(AppKind app) { return app == AppKind::pr ? 1e-7 : 0.0; }

void write_spec(const RunSpec& spec) {
  std::filesystem::create_directories(spec.out);
  const auto path = std::filesystem::path(spec.out) / (spec.run_name() + ".spec.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot create '" + path.string() + "'");
  out << spec.to_json().dump(2) << '\n';
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

std::optional<edge_t> parse_threshold(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "inf") return kNoHugeVertices;
  edge_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw config_error("threshold must be a non-negative integer, 'auto' or 'inf', got '" +
                       text + "'");
  }
  return value;
}

std::string threshold_name(const std::optional<edge_t>& threshold) {
  if (!threshold) return "auto";
  if (*threshold == kNoHugeVertices) return "inf";
  return std::to_string(*threshold);
}

std::string RunSpec::run_name() const {
  if (!name.empty()) return name;
  return std::string(to_string(app)) + "-" + scheduler.name();
}

std::map<std::string, std::string> RunSpec::info() const {
  std::map<std::string, std::string> out;
  out["name"] = run_name();
  out["input"] = input;
  out["format"] = infer_format(*this);
  out["app"] = std::string(to_string(app));
  out["scheduler"] = scheduler.name();
  out["threshold"] = threshold_name(scheduler.threshold);
  out["resolved_threshold"] = threshold_name(scheduler.resolved_threshold(config));
  out["ctas"] = std::to_string(config.num_ctas);
  out["threads_per_cta"] = std::to_string(config.threads_per_cta);
  out["warp_size"] = std::to_string(config.warp_size);
  out["devices"] = std::to_string(devices);
  out["seed"] = std::to_string(rmat.seed);
  return out;
}

nlohmann::ordered_json RunSpec::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = {{"source", input},
                {"format", format},
                {"scale", rmat.scale},
                {"edge_factor", rmat.edge_factor},
                {"probabilities", {rmat.a, rmat.b, rmat.c, rmat.d}},
                {"max_weight", rmat.max_weight},
                {"weighted", weighted},
                {"symmetrize", symmetrize}};
  j["seed"] = rmat.seed;
  j["app"] = {{"name", std::string(to_string(app))},
              {"source", params.source},
              {"k", params.k},
              {"damping", params.damping},
              {"tolerance", params.tolerance}};
  j["scheduler"] = {{"name", scheduler.name()}, {"threshold", threshold_name(scheduler.threshold)}};
  j["kernel"] = {{"ctas", config.num_ctas},
                 {"threads_per_cta", config.threads_per_cta},
                 {"warp_size", config.warp_size}};
  j["devices"] = devices;
  j["max_rounds"] = max_rounds;
  j["out"] = out;
  j["name"] = name;
  return j;
}

RunSpec RunSpec::from_json(const nlohmann::json& j) {
  RunSpec s;
  try {
    if (!j.is_object()) throw config_error("run spec must be a JSON object");
    const nlohmann::json empty = nlohmann::json::object();
    const auto& in = j.contains("input") ? j.at("input") : empty;
    s.input = get_or<std::string>(in, "source", s.input);
    s.format = get_or<std::string>(in, "format", s.format);
    s.rmat.scale = get_or<unsigned>(in, "scale", s.rmat.scale);
    s.rmat.edge_factor = get_or<edge_t>(in, "edge_factor", s.rmat.edge_factor);
    s.rmat.max_weight = get_or<weight_t>(in, "max_weight", s.rmat.max_weight);
    s.weighted = get_or<bool>(in, "weighted", s.weighted);
    s.symmetrize = get_or<bool>(in, "symmetrize", s.symmetrize);
    if (in.contains("probabilities")) {
      const auto p = in.at("probabilities").get<std::vector<double>>();
      if (p.size() != 4) throw config_error("input.probabilities needs four values");
      s.rmat.a = p[0];
      s.rmat.b = p[1];
      s.rmat.c = p[2];
      s.rmat.d = p[3];
    }
    s.rmat.seed = get_or<std::uint64_t>(j, "seed", s.rmat.seed);

    const auto& app = j.contains("app") ? j.at("app") : empty;
    s.app = parse_app(get_or<std::string>(app, "name", std::string(to_string(s.app))));
    s.params.source = get_or<vertex_t>(app, "source", s.params.source);
    s.params.k = get_or<std::uint32_t>(app, "k", s.params.k);
    s.params.damping = get_or<double>(app, "damping", s.params.damping);
    s.params.tolerance = get_or<double>(app, "tolerance", s.params.tolerance);

    const auto& sched = j.contains("scheduler") ? j.at("scheduler") : empty;
    s.scheduler = SchedulerKind::parse(get_or<std::string>(sched, "name", s.scheduler.name()));
    if (sched.contains("threshold")) {
      const auto& t = sched.at("threshold");
      s.scheduler.threshold = t.is_number_unsigned() ? std::optional<edge_t>(t.get<edge_t>())
                                                     : parse_threshold(t.get<std::string>());
    }

    const auto& kernel = j.contains("kernel") ? j.at("kernel") : empty;
    s.config.num_ctas = get_or<std::uint32_t>(kernel, "ctas", s.config.num_ctas);
    s.config.threads_per_cta =
        get_or<std::uint32_t>(kernel, "threads_per_cta", s.config.threads_per_cta);
    s.config.warp_size = get_or<std::uint32_t>(kernel, "warp_size", s.config.warp_size);

    s.devices = get_or<std::size_t>(j, "devices", s.devices);
    s.max_rounds = get_or<std::uint64_t>(j, "max_rounds", s.max_rounds);
    s.out = get_or<std::string>(j, "out", s.out);
    s.name = get_or<std::string>(j, "name", s.name);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("invalid run spec: ") + e.what());
  }
  s.config.validate();
  return s;
}

Graph load_input(const RunSpec& spec) {
  const std::string format = infer_format(spec);
  Graph g;
  if (format == "rmat") {
    RmatParams params = spec.rmat;
    params.weighted = params.weighted || spec.weighted;
    g = generate_rmat(params);
  } else {
    GraphFormat f = parse_graph_format(format);
    if (f == GraphFormat::el && spec.weighted) f = GraphFormat::wel;
    g = load_graph(spec.input, f);
  }
  return spec.symmetrize ? symmetrize(g) : g;
}

Outcome execute(const RunSpec& spec, const Graph& prepared) {
  auto app = make_app(spec.app, spec.params);
  EngineOptions options;
  options.devices = spec.devices;
  options.max_rounds = spec.max_rounds;
  Outcome o;
  o.result = run(prepared, *app, spec.scheduler, spec.config, options);
  o.summary = report(o.result.log);
  return o;
}

int cmd_run(const RunSpec& spec, std::ostream& out) {
  spec.config.validate();
  const Graph raw = load_input(spec);
  const Graph prepared = prepare_graph(raw, *make_app(spec.app, spec.params));
  const Outcome o = execute(spec, prepared);
  write_spec(spec);
  write_reports(spec.out, spec.run_name(), o.result, spec.info());
  const RunSummary& s = o.summary;
  out << spec.run_name() << ": vertices=" << prepared.num_vertices()
      << " edges=" << prepared.num_edges() << " rounds=" << s.rounds << " processed=" << s.edges
      << " cta_cv=" << fmt(s.aggregate_cta.cv) << " max_round_cv=" << fmt(s.max_round_cv)
      << " max_round_max_mean=" << fmt(s.max_round_max_mean)
      << " search_accesses=" << s.search_accesses
      << " lb_launches=" << s.launches[static_cast<std::size_t>(KernelKind::lb)]
      << " labels=" << hex(o.result.labels.digest()) << '\n';
  return kOk;
}

int cmd_compare(const RunSpec& spec, const std::vector<SchedulerKind>& schedulers,
                std::ostream& out) {
  if (schedulers.empty()) throw config_error("compare needs at least one scheduler");
  spec.config.validate();
  const Graph raw = load_input(spec);
  const Graph prepared = prepare_graph(raw, *make_app(spec.app, spec.params));
  const std::string base =
      spec.name.empty() ? std::string(to_string(spec.app)) + "-compare" : spec.name;
  std::filesystem::create_directories(spec.out);

  std::ostringstream table;
  table << "scheduler,rounds,edges,cta_cv,cta_max_mean,max_round_cv,max_round_max_mean,"
           "max_straggler,search_accesses,search_paths,lb_launches,twc_launches,labels\n";
  std::optional<LabelArray> reference;
  std::string reference_name;
  int status = kOk;
  for (const SchedulerKind& kind : schedulers) {
    RunSpec one = spec;
    one.scheduler = kind;
    if (kind.type == SchedulerType::alb) one.scheduler.threshold = spec.scheduler.threshold;
    one.name = base + "-" + kind.name();
    const Outcome o = execute(one, prepared);
    write_reports(one.out, one.name, o.result, one.info());
    const RunSummary& s = o.summary;
    table << kind.name() << ',' << s.rounds << ',' << s.edges << ','
          << fmt(s.aggregate_cta.cv) << ',' << fmt(s.aggregate_cta.max_mean) << ','
          << fmt(s.max_round_cv) << ',' << fmt(s.max_round_max_mean) << ','
          << fmt(s.max_straggler) << ',' << s.search_accesses << ',' << s.search_paths << ','
          << s.launches[static_cast<std::size_t>(KernelKind::lb)] << ','
          << s.launches[static_cast<std::size_t>(KernelKind::twc)] << ','
          << hex(o.result.labels.digest()) << '\n';
    if (!reference) {
      reference = o.result.labels;
      reference_name = kind.name();
      continue;
    }
    const auto diff = reference->first_difference(o.result.labels, label_tolerance(spec.app));
    if (diff) {
      status = kMismatch;
      const std::size_t v = *diff;
      out << "label mismatch: " << reference_name << " vs " << kind.name() << " at vertex " << v;
      if (v < reference->size() && v < o.result.labels.size()) {
        if (reference->kind == LabelArray::Kind::rank) {
          out << " (" << fmt(reference->reals[v], "%.17g") << " vs "
              << fmt(o.result.labels.reals[v], "%.17g") << ")";
        } else {
          out << " (" << reference->values[v] << " vs " << o.result.labels.values[v] << ")";
        }
      }
      out << '\n';
    }
  }
  {
    const auto path = std::filesystem::path(spec.out) / (base + ".compare.csv");
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw config_error("cannot create '" + path.string() + "'");
    csv << table.str();
  }
  out << table.str();
  if (status == kOk) out << "labels agree across " << schedulers.size() << " schedulers\n";
  return status;
}

int cmd_sweep(const RunSpec& spec, const std::vector<std::optional<edge_t>>& thresholds,
              std::ostream& out) {
  if (thresholds.empty()) throw config_error("sweep needs at least one threshold");
  spec.config.validate();
  const Graph raw = load_input(spec);
  const Graph prepared = prepare_graph(raw, *make_app(spec.app, spec.params));
  const std::string base =
      spec.name.empty() ? std::string(to_string(spec.app)) + "-sweep" : spec.name;
  const Distribution distribution = spec.scheduler.type == SchedulerType::alb
                                        ? spec.scheduler.distribution
                                        : Distribution::cyclic;

  std::ostringstream table;
  table << "threshold,resolved,rounds,edges,cta_cv,cta_max_mean,max_round_cv,"
           "max_round_max_mean,search_accesses,lb_launches,twc_launches,lb_edges\n";
  for (const auto& threshold : thresholds) {
    RunSpec one = spec;
    one.scheduler = SchedulerKind::alb(distribution, threshold);
    const Outcome o = execute(one, prepared);
    const RunSummary& s = o.summary;
    std::uint64_t lb_edges = 0;
    for (const RoundRecord& r : o.result.log) {
      for (const RoundMetrics& m : r.devices) {
        for (std::uint64_t e : m.kernel_edges(KernelKind::lb)) lb_edges += e;
      }
    }
    table << threshold_name(threshold) << ','
          << threshold_name(one.scheduler.resolved_threshold(one.config)) << ',' << s.rounds
          << ',' << s.edges << ',' << fmt(s.aggregate_cta.cv) << ','
          << fmt(s.aggregate_cta.max_mean) << ',' << fmt(s.max_round_cv) << ','
          << fmt(s.max_round_max_mean) << ',' << s.search_accesses << ','
          << s.launches[static_cast<std::size_t>(KernelKind::lb)] << ','
          << s.launches[static_cast<std::size_t>(KernelKind::twc)] << ',' << lb_edges << '\n';
  }
  std::filesystem::create_directories(spec.out);
  const auto path = std::filesystem::path(spec.out) / (base + ".sweep.csv");
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw config_error("cannot create '" + path.string() + "'");
  csv << table.str();
  out << table.str();
  return kOk;
}

int cmd_convert(const RunSpec& spec, const std::string& output, const std::string& format,
                std::ostream& out) {
  const Graph g = load_input(spec);
  const GraphFormat f = parse_graph_format(format);
  save_graph(output, g, f);
  out << "wrote " << output << " (" << g.num_vertices() << " vertices, " << g.num_edges()
      << " edges)\n";
  return kOk;
}

namespace {

// Flags shared by every subcommand. Values only override the spec when given
// on the command line, so `--spec file.json` can be refined by flags.
struct Flags {
  std::string spec_path;
  std::string input, format, app, scheduler, distribution, threshold, out, name;
  unsigned scale = 0;
  edge_t edge_factor = 0;
  std::vector<double> probs;
  bool symmetrize = false, weighted = false;
  vertex_t source = 0;
  std::uint32_t k = 0, ctas = 0, tpb = 0, warp = 0;
  double damping = 0, tol = 0;
  std::size_t devices = 0;
  std::uint64_t seed = 0, max_rounds = 0;
  std::map<std::string, CLI::Option*> opts;

  void bind(CLI::App& sub) {
    opts["spec"] = sub.add_option("--spec", spec_path, "Load a run spec JSON file")
                       ->check(CLI::ExistingFile);
    opts["input"] = sub.add_option("--input", input, "Graph path, or 'rmat' to generate");
    opts["format"] = sub.add_option("--format", format, "el, wel, bin or rmat")
                         ->check(CLI::IsMember({"el", "wel", "bin", "rmat"}));
    opts["scale"] = sub.add_option("--scale", scale, "RMAT scale (log2 |V|)");
    opts["edge-factor"] = sub.add_option("--edge-factor", edge_factor, "RMAT edges per vertex");
    opts["rmat-probs"] = sub.add_option("--rmat-probs", probs, "RMAT a,b,c,d")
                             ->delimiter(',')
                             ->expected(4);
    opts["symmetrize"] = sub.add_flag("--symmetrize", symmetrize, "Symmetrize the input");
    opts["weighted"] = sub.add_flag("--weighted", weighted, "Read or generate edge weights");
    opts["app"] = sub.add_option("--app", app, "bfs, sssp, cc, pr or kcore");
    opts["source"] = sub.add_option("--source", source, "Source vertex for bfs/sssp");
    opts["k"] = sub.add_option("--k", k, "Core number for kcore");
    opts["damping"] = sub.add_option("--damping", damping, "PageRank damping factor");
    opts["tol"] = sub.add_option("--tol", tol, "PageRank residual tolerance");
    opts["scheduler"] = sub.add_option("--scheduler", scheduler,
                                       "vertex, edge, twc, lb[-cyclic|-blocked], "
                                       "alb[-cyclic|-blocked]");
    opts["distribution"] = sub.add_option("--distribution", distribution, "cyclic or blocked")
                               ->check(CLI::IsMember({"cyclic", "blocked"}));
    opts["threshold"] = sub.add_option("--threshold", threshold, "Huge-vertex degree: N, auto or inf");
    opts["cta"] = sub.add_option("--cta", ctas, "CTAs per launch");
    opts["tpb"] = sub.add_option("--tpb", tpb, "Threads per CTA");
    opts["warp"] = sub.add_option("--warp", warp, "Warp size");
    opts["devices"] = sub.add_option("--devices", devices, "Simulated devices");
    opts["seed"] = sub.add_option("--seed", seed, "RMAT seed");
    opts["max-rounds"] = sub.add_option("--max-rounds", max_rounds, "Round limit (0 = default)");
    opts["out"] = sub.add_option("--out", out, "Output directory");
    opts["name"] = sub.add_option("--name", name, "Run name used for report files");
  }

  bool given(const char* key) const { return opts.at(key)->count() > 0; }

  RunSpec resolve() const {
    RunSpec s;
    if (given("spec")) {
      std::ifstream in(spec_path);
      if (!in) throw config_error("cannot open '" + spec_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw config_error("invalid run spec '" + spec_path + "': " + e.what());
      }
      s = RunSpec::from_json(j);
    }
    if (given("input")) s.input = input;
    if (given("format")) s.format = format;
    if (given("scale")) s.rmat.scale = scale;
    if (given("edge-factor")) s.rmat.edge_factor = edge_factor;
    if (given("rmat-probs")) {
      s.rmat.a = probs[0];
      s.rmat.b = probs[1];
      s.rmat.c = probs[2];
      s.rmat.d = probs[3];
    }
    if (given("symmetrize")) s.symmetrize = symmetrize;
    if (given("weighted")) s.weighted = weighted;
    if (given("app")) s.app = parse_app(app);
    if (given("source")) s.params.source = source;
    if (given("k")) s.params.k = k;
    if (given("damping")) s.params.damping = damping;
    if (given("tol")) s.params.tolerance = tol;
    if (given("scheduler")) {
      const auto threshold_kept = s.scheduler.threshold;
      s.scheduler = SchedulerKind::parse(scheduler);
      s.scheduler.threshold = threshold_kept;
    }
    if (given("distribution")) {
      s.scheduler.distribution =
          distribution == "blocked" ? Distribution::blocked : Distribution::cyclic;
    }
    if (given("threshold")) s.scheduler.threshold = parse_threshold(threshold);
    if (given("cta")) s.config.num_ctas = ctas;
    if (given("tpb")) s.config.threads_per_cta = tpb;
    if (given("warp")) s.config.warp_size = warp;
    if (given("devices")) s.devices = devices;
    if (given("seed")) s.rmat.seed = seed;
    if (given("max-rounds")) s.max_rounds = max_rounds;
    if (given("out")) s.out = out;
    if (given("name")) s.name = name;
    s.config.validate();
    if (s.devices == 0) throw config_error("--devices must be at least 1");
    return s;
  }
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic SIMT simulator for GPU graph load balancers"};
  app.require_subcommand(1);

  Flags run_flags, compare_flags, sweep_flags, convert_flags;
  auto* run_cmd = app.add_subcommand("run", "Run one application with one scheduler");
  run_flags.bind(*run_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "Run several schedulers and compare");
  compare_flags.bind(*compare_cmd);
  std::vector<std::string> scheduler_list = {"vertex,edge,twc,lb,alb"};
  compare_cmd->add_option("--schedulers", scheduler_list, "Comma-separated scheduler names");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the ALB huge-vertex threshold");
  sweep_flags.bind(*sweep_cmd);
  std::vector<std::string> threshold_list = {
      "0,1,256,512,1024,2048,4096,8192,16384,32768,65536,131072,262144,inf"};
  sweep_cmd->add_option("--thresholds", threshold_list, "Comma-separated N, auto or inf");

  auto* convert_cmd = app.add_subcommand("convert", "Convert or export a graph");
  convert_flags.bind(*convert_cmd);
  std::string output, output_format = "bin";
  convert_cmd->add_option("--output", output, "Destination path")->required();
  convert_cmd->add_option("--output-format", output_format, "el, wel or bin")
      ->check(CLI::IsMember({"el", "wel", "bin"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto warn_zero = [&err](const std::optional<edge_t>& threshold) {
    if (threshold && *threshold == 0) err << "warning: threshold 0 is treated as 1\n";
  };

  try {
    if (run_cmd->parsed()) {
      const RunSpec spec = run_flags.resolve();
      warn_zero(spec.scheduler.threshold);
      return cmd_run(spec, out);
    }
    if (compare_cmd->parsed()) {
      std::vector<SchedulerKind> kinds;
      for (const std::string& n : split_list(scheduler_list)) {
        kinds.push_back(SchedulerKind::parse(n));
      }
      return cmd_compare(compare_flags.resolve(), kinds, out);
    }
    if (sweep_cmd->parsed()) {
      std::vector<std::optional<edge_t>> thresholds;
      for (const std::string& t : split_list(threshold_list)) {
        thresholds.push_back(parse_threshold(t));
        warn_zero(thresholds.back());
      }
      return cmd_sweep(sweep_flags.resolve(), thresholds, out);
    }
    if (convert_cmd->parsed()) {
      return cmd_convert(convert_flags.resolve(), output, output_format, out);
    }
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const range_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kUsage;
}

}  // namespace albsim::cli
