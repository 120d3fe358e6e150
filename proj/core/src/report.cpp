#include "albsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "albsim/errors.hpp"
#include "json.hpp"

namespace albsim {

namespace {

constexpr std::array<KernelKind, kKernelKinds> kKinds = {
    KernelKind::inspect, KernelKind::twc, KernelKind::lb, KernelKind::vertex, KernelKind::edge};

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot create '" + path.string() + "'");
  return out;
}

Histogram histogram(std::span<const std::uint64_t> values, std::size_t bins) {
  Histogram h;
  if (values.empty() || bins == 0) return h;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = static_cast<double>(*lo_it);
  double hi = static_cast<double>(*hi_it);
  if (hi == lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges.push_back(lo + width * static_cast<double>(i));
  h.bin_edges.back() = hi;
  h.counts.assign(bins, 0);
  for (std::uint64_t v : values) {
    auto bin = static_cast<std::size_t>((static_cast<double>(v) - lo) / width);
    ++h.counts[std::min(bin, bins - 1)];
  }
  return h;
}

nlohmann::ordered_json to_json(const LoadStats& s) {
  return {{"max", s.max}, {"mean", s.mean}, {"max_mean", s.max_mean}, {"cv", s.cv}};
}

nlohmann::ordered_json launches_json(const std::array<std::uint64_t, kKernelKinds>& launches) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (KernelKind k : kKinds) out[std::string(to_string(k))] = launches[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace

LoadStats load_stats(std::span<const std::uint64_t> loads) {
  LoadStats s;
  if (loads.empty()) return s;
  double sum = 0.0;
  for (std::uint64_t v : loads) {
    s.max = std::max(s.max, v);
    sum += static_cast<double>(v);
  }
  s.mean = sum / static_cast<double>(loads.size());
  if (s.mean == 0.0) return s;
  double var = 0.0;
  for (std::uint64_t v : loads) {
    const double d = static_cast<double>(v) - s.mean;
    var += d * d;
  }
  var /= static_cast<double>(loads.size());
  s.max_mean = static_cast<double>(s.max) / s.mean;
  s.cv = std::sqrt(var) / s.mean;
  return s;
}

RoundSummary summarize_round(const RoundRecord& record) {
  RoundSummary r;
  r.round = record.round;
  r.frontier = record.frontier_size;
  std::vector<std::uint64_t> ctas;
  std::vector<std::uint64_t> device_loads;
  for (const RoundMetrics& m : record.devices) {
    ctas.insert(ctas.end(), m.per_cta_edges.begin(), m.per_cta_edges.end());
    device_loads.push_back(m.per_cta_edges.empty()
                               ? 0
                               : *std::max_element(m.per_cta_edges.begin(), m.per_cta_edges.end()));
    r.active_edges += m.active_edges;
    r.edges += m.edges_processed();
    r.search_accesses += m.search_memory_accesses;
    r.search_paths += m.search_paths();
    r.max_pass_paths = std::max(r.max_pass_paths, m.max_pass_paths());
    for (std::size_t k = 0; k < kKernelKinds; ++k) r.launches[k] += m.kernel_launches[k];
    r.degree_reads += m.degree_reads;
    r.coo_bytes += m.coo_bytes;
    r.thread_critical_path += m.thread_critical_path;
  }
  r.cta = load_stats(ctas);
  r.straggler = load_stats(device_loads).max_mean;
  r.mirror_updates = record.sync.messages();
  return r;
}

RunSummary report(const std::vector<RoundRecord>& log, std::size_t histogram_bins) {
  RunSummary s;
  s.rounds = log.size();
  for (const RoundRecord& record : log) {
    RoundSummary r = summarize_round(record);
    std::size_t at = 0;
    for (const RoundMetrics& m : record.devices) {
      if (s.cta_totals.size() < at + m.per_cta_edges.size()) {
        s.cta_totals.resize(at + m.per_cta_edges.size(), 0);
      }
      for (std::uint64_t e : m.per_cta_edges) s.cta_totals[at++] += e;
    }
    s.max_round_cv = std::max(s.max_round_cv, r.cta.cv);
    s.max_round_max_mean = std::max(s.max_round_max_mean, r.cta.max_mean);
    s.max_straggler = std::max(s.max_straggler, r.straggler);
    s.edges += r.edges;
    s.search_accesses += r.search_accesses;
    s.search_paths += r.search_paths;
    s.max_pass_paths = std::max(s.max_pass_paths, r.max_pass_paths);
    for (std::size_t k = 0; k < kKernelKinds; ++k) s.launches[k] += r.launches[k];
    s.mirror_updates += r.mirror_updates;
    s.per_round.push_back(r);
  }
  s.aggregate_cta = load_stats(s.cta_totals);
  s.cta_histogram = histogram(s.cta_totals, histogram_bins);
  return s;
}

void write_reports(const std::filesystem::path& dir, const std::string& name,
                   const RunResult& result, const std::map<std::string, std::string>& run_info) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw config_error("cannot create '" + dir.string() + "': " + ec.message());
  const RunSummary summary = report(result.log);

  {
    auto out = open_out(dir / (name + ".cta.csv"));
    out << "round,device,cta,edges,inspect_edges,twc_edges,lb_edges,vertex_edges,edge_edges\n";
    for (const RoundRecord& record : result.log) {
      for (std::size_t d = 0; d < record.devices.size(); ++d) {
        const RoundMetrics& m = record.devices[d];
        for (std::size_t c = 0; c < m.per_cta_edges.size(); ++c) {
          out << record.round << ',' << d << ',' << c << ',' << m.per_cta_edges[c];
          for (KernelKind k : kKinds) out << ',' << m.kernel_edges(k)[c];
          out << '\n';
        }
      }
    }
  }
  {
    auto out = open_out(dir / (name + ".warp.csv"));
    out << "round,device,warp,search_paths,max_pass_paths\n";
    for (const RoundRecord& record : result.log) {
      for (std::size_t d = 0; d < record.devices.size(); ++d) {
        const RoundMetrics& m = record.devices[d];
        if (m.launches(KernelKind::lb) == 0) continue;
        for (std::size_t w = 0; w < m.per_warp_search_paths.size(); ++w) {
          out << record.round << ',' << d << ',' << w << ',' << m.per_warp_search_paths[w] << ','
              << m.per_warp_max_pass_paths[w] << '\n';
        }
      }
    }
  }
  {
    auto out = open_out(dir / (name + ".round.csv"));
    out << "round,frontier,active_edges,edges,cta_max,cta_mean,cta_max_mean,cta_cv,straggler,"
           "search_accesses,search_paths,max_pass_paths,launches_inspect,launches_twc,"
           "launches_lb,launches_vertex,launches_edge,degree_reads,coo_bytes,"
           "thread_critical_path,mirror_updates\n";
    for (const RoundSummary& r : summary.per_round) {
      out << r.round << ',' << r.frontier << ',' << r.active_edges << ',' << r.edges << ','
          << r.cta.max << ',' << fmt(r.cta.mean) << ',' << fmt(r.cta.max_mean) << ','
          << fmt(r.cta.cv) << ',' << fmt(r.straggler) << ',' << r.search_accesses << ','
          << r.search_paths << ',' << r.max_pass_paths;
      for (std::uint64_t l : r.launches) out << ',' << l;
      out << ',' << r.degree_reads << ',' << r.coo_bytes << ',' << r.thread_critical_path << ','
          << r.mirror_updates << '\n';
    }
  }
  {
    nlohmann::ordered_json j;
    j["schema_version"] = kSummarySchemaVersion;
    nlohmann::ordered_json run = nlohmann::ordered_json::object();
    for (const auto& [key, value] : run_info) run[key] = value;
    j["run"] = run;
    j["rounds"] = summary.rounds;
    j["edges"] = summary.edges;
    j["kernel_launches"] = launches_json(summary.launches);
    j["search_memory_accesses"] = summary.search_accesses;
    j["search_paths"] = summary.search_paths;
    j["max_pass_paths"] = summary.max_pass_paths;
    j["mirror_updates"] = summary.mirror_updates;
    j["cta"] = to_json(summary.aggregate_cta);
    j["cta"]["histogram"] = {{"bin_edges", summary.cta_histogram.bin_edges},
                             {"counts", summary.cta_histogram.counts}};
    j["max_round_cv"] = summary.max_round_cv;
    j["max_round_max_mean"] = summary.max_round_max_mean;
    j["max_straggler"] = summary.max_straggler;
    j["devices"] = result.partition.num_devices();
    j["mirrors"] = result.partition.num_mirrors();
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(result.labels.digest()));
    j["labels"] = {{"size", result.labels.size()}, {"digest", digest}};
    auto out = open_out(dir / (name + ".summary.json"));
    out << j.dump(2) << '\n';
  }
}

}  // namespace albsim
