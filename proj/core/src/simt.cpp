#include "albsim/simt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace albsim {

void KernelConfig::validate() const {
  if (num_ctas == 0 || threads_per_cta == 0 || warp_size == 0) {
    throw config_error("kernel geometry must be positive");
  }
  if (threads_per_cta % warp_size != 0) {
    throw config_error("threads per CTA (" + std::to_string(threads_per_cta) +
                       ") must be a multiple of the warp size (" + std::to_string(warp_size) +
                       ")");
  }
}

ThreadCoord ThreadCoord::of(const KernelConfig& config, std::uint64_t global_id) {
  ThreadCoord c;
  c.global_id = global_id;
  c.cta_id = static_cast<std::uint32_t>(global_id / config.threads_per_cta);
  c.local_id = static_cast<std::uint32_t>(global_id % config.threads_per_cta);
  c.warp_id = global_id / config.warp_size;
  c.lane_id = static_cast<std::uint32_t>(global_id % config.warp_size);
  return c;
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::inspect:
      return "inspect";
    case KernelKind::twc:
      return "twc";
    case KernelKind::lb:
      return "lb";
    case KernelKind::vertex:
      return "vertex";
    case KernelKind::edge:
      return "edge";
  }
  return "?";
}

RoundMetrics::RoundMetrics(const KernelConfig& config)
    : per_cta_edges(config.num_ctas, 0),
      per_warp_search_paths(config.num_warps(), 0),
      per_warp_max_pass_paths(config.num_warps(), 0) {
  for (auto& per_kernel : per_cta_kernel_edges) per_kernel.assign(config.num_ctas, 0);
}

std::uint64_t RoundMetrics::edges_processed() const {
  return std::accumulate(per_cta_edges.begin(), per_cta_edges.end(), std::uint64_t{0});
}

std::uint64_t RoundMetrics::search_paths() const {
  return std::accumulate(per_warp_search_paths.begin(), per_warp_search_paths.end(),
                         std::uint64_t{0});
}

std::uint32_t RoundMetrics::max_pass_paths() const {
  if (per_warp_max_pass_paths.empty()) return 0;
  return *std::max_element(per_warp_max_pass_paths.begin(), per_warp_max_pass_paths.end());
}

simulation_error::simulation_error(const ThreadCoord& coord, const std::string& what)
    : error("thread " + std::to_string(coord.global_id) + " (cta " +
            std::to_string(coord.cta_id) + ", warp " + std::to_string(coord.warp_id) +
            ", lane " + std::to_string(coord.lane_id) + "): " + what),
      coord_(coord) {}

bool SearchCoalescer::charge(RoundMetrics& metrics, std::uint64_t warp_id, std::uint64_t pass,
                             std::span<const std::uint32_t> path) {
  if (warp_id != warp_) {
    if (warp_ != kNoWarp && warp_id < warp_) {
      throw std::logic_error("search charges for warp " + std::to_string(warp_id) +
                             " arrived after the warp was flushed");
    }
    warp_ = warp_id;
    passes_.clear();
  }
  if (passes_.size() <= pass) passes_.resize(pass + 1);
  auto& seen = passes_[pass];
  const bool fresh = std::none_of(seen.begin(), seen.end(), [&](const auto& p) {
    return std::equal(p.begin(), p.end(), path.begin(), path.end());
  });
  if (!fresh) return false;
  seen.emplace_back(path.begin(), path.end());
  metrics.per_warp_search_paths[warp_id] += 1;
  metrics.search_memory_accesses += path.size();
  auto& max_paths = metrics.per_warp_max_pass_paths[warp_id];
  max_paths = std::max<std::uint32_t>(max_paths, static_cast<std::uint32_t>(seen.size()));
  return true;
}

void SearchCoalescer::reset() {
  warp_ = kNoWarp;
  passes_.clear();
}

void ThreadContext::charge_edges(std::uint64_t n) {
  auto& m = launch_->metrics_;
  m.per_cta_edges[coord_.cta_id] += n;
  m.per_cta_kernel_edges[static_cast<std::size_t>(launch_->kind_)][coord_.cta_id] += n;
  edges_ += n;
}

void ThreadContext::charge_search(std::uint64_t pass, std::span<const std::uint32_t> probes) {
  launch_->coalescer_.charge(launch_->metrics_, coord_.warp_id, pass, probes);
}

namespace detail {

LaunchState::LaunchState(const KernelConfig& config, KernelKind kind, RoundMetrics& metrics)
    : config_(config), kind_(kind), metrics_(metrics) {
  metrics_.kernel_launches[static_cast<std::size_t>(kind)] += 1;
  metrics_.kernel_sequence.push_back(kind);
}

void LaunchState::retire(const ThreadContext& ctx) {
  busiest_thread_ = std::max(busiest_thread_, ctx.edges_);
}

void LaunchState::finish() { metrics_.thread_critical_path += busiest_thread_; }

}  // namespace detail

}  // namespace albsim
