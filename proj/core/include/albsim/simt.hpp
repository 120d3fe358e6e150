#pragma once

#include <array>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "albsim/errors.hpp"

namespace albsim {

/// Launch geometry of a simulated kernel.
struct KernelConfig {
  std::uint32_t num_ctas = 84;
  std::uint32_t threads_per_cta = 256;
  std::uint32_t warp_size = 32;

  std::uint64_t total_threads() const noexcept {
    return std::uint64_t{num_ctas} * threads_per_cta;
  }
  std::uint32_t warps_per_cta() const noexcept { return threads_per_cta / warp_size; }
  std::uint64_t num_warps() const noexcept { return total_threads() / warp_size; }

  /// Throws config_error unless every field is positive and threads_per_cta
  /// is a multiple of warp_size.
  void validate() const;

  bool operator==(const KernelConfig&) const = default;
};

/// Position of one simulated thread in the launch hierarchy.
struct ThreadCoord {
  std::uint64_t global_id = 0;
  std::uint32_t cta_id = 0;
  std::uint32_t local_id = 0;  // id within the CTA
  std::uint64_t warp_id = 0;   // global warp index
  std::uint32_t lane_id = 0;

  static ThreadCoord of(const KernelConfig& config, std::uint64_t global_id);
};

enum class KernelKind : std::uint8_t { inspect, twc, lb, vertex, edge };
inline constexpr std::size_t kKernelKinds = 5;

std::string_view to_string(KernelKind kind);

/// Counters for one BSP round on one device. Every edge counter is in units
/// of operator applications; search counters model binary-search traffic.
struct RoundMetrics {
  RoundMetrics() = default;
  explicit RoundMetrics(const KernelConfig& config);

  std::vector<std::uint64_t> per_cta_edges;
  std::array<std::vector<std::uint64_t>, kKernelKinds> per_cta_kernel_edges;

  /// Distinct search paths charged to each warp, summed over every pass.
  std::vector<std::uint64_t> per_warp_search_paths;
  /// Largest number of distinct paths a warp took within a single pass.
  std::vector<std::uint32_t> per_warp_max_pass_paths;
  std::uint64_t search_memory_accesses = 0;

  std::array<std::uint64_t, kKernelKinds> kernel_launches{};
  std::vector<KernelKind> kernel_sequence;

  /// Sum over launches of the busiest thread's edge count.
  std::uint64_t thread_critical_path = 0;
  std::uint64_t degree_reads = 0;
  std::uint64_t coo_bytes = 0;
  std::uint64_t active_vertices = 0;
  std::uint64_t active_edges = 0;

  std::uint64_t launches(KernelKind kind) const {
    return kernel_launches[static_cast<std::size_t>(kind)];
  }
  std::span<const std::uint64_t> kernel_edges(KernelKind kind) const {
    return per_cta_kernel_edges[static_cast<std::size_t>(kind)];
  }
  std::uint64_t edges_processed() const;
  std::uint64_t search_paths() const;
  std::uint32_t max_pass_paths() const;

  bool operator==(const RoundMetrics&) const = default;
};

/// Thrown when a thread body fails; carries the failing thread's coordinates.
class simulation_error : public error {
 public:
  simulation_error(const ThreadCoord& coord, const std::string& what);
  const ThreadCoord& coord() const noexcept { return coord_; }

 private:
  ThreadCoord coord_;
};

/// Coalesces binary-search paths within a (warp, pass) group.
///
/// A pass is one cyclic stride or one blocked step: lanes of a warp that
/// search during the same pass run in lockstep, so lanes following an
/// identical probe sequence share memory transactions. The first lane to take
/// a path pays one access per probe; later lanes on that path pay nothing.
/// Charges for one warp must be contiguous; a warp that was already flushed
/// cannot reappear.
class SearchCoalescer {
 public:
  /// Returns true when `path` is new for (warp_id, pass).
  bool charge(RoundMetrics& metrics, std::uint64_t warp_id, std::uint64_t pass,
              std::span<const std::uint32_t> path);

  void reset();

 private:
  static constexpr std::uint64_t kNoWarp = ~std::uint64_t{0};
  std::uint64_t warp_ = kNoWarp;
  std::vector<std::vector<std::vector<std::uint32_t>>> passes_;
};

namespace detail {
class LaunchState;
}

/// Handle given to each thread body for charging work.
class ThreadContext {
 public:
  const ThreadCoord& coord() const noexcept { return coord_; }

  /// Attributes `n` operator applications to this thread (and its CTA).
  void charge_edges(std::uint64_t n = 1);

  /// Charges one binary search performed during `pass`.
  void charge_search(std::uint64_t pass, std::span<const std::uint32_t> probes);

 private:
  friend class detail::LaunchState;
  ThreadContext(detail::LaunchState& launch, const ThreadCoord& coord)
      : launch_(&launch), coord_(coord) {}

  detail::LaunchState* launch_;
  ThreadCoord coord_;
  std::uint64_t edges_ = 0;
};

namespace detail {

class LaunchState {
 public:
  LaunchState(const KernelConfig& config, KernelKind kind, RoundMetrics& metrics);

  ThreadContext thread(std::uint64_t global_id) { return {*this, ThreadCoord::of(config_, global_id)}; }
  void retire(const ThreadContext& ctx);
  void finish();

 private:
  friend class albsim::ThreadContext;

  const KernelConfig& config_;
  KernelKind kind_;
  RoundMetrics& metrics_;
  SearchCoalescer coalescer_;
  std::uint64_t busiest_thread_ = 0;
};

}  // namespace detail

/// Simulates one kernel launch: invokes `body(ThreadContext&)` once per
/// global thread id, in ascending id order. The launch is recorded in
/// `metrics` before any body runs. Exceptions escaping a body are rethrown as
/// simulation_error carrying the thread's coordinates.
template <class Body>
void for_each_thread(const KernelConfig& config, KernelKind kind, RoundMetrics& metrics,
                     Body&& body) {
  detail::LaunchState launch(config, kind, metrics);
  const std::uint64_t total = config.total_threads();
  for (std::uint64_t tid = 0; tid < total; ++tid) {
    ThreadContext ctx = launch.thread(tid);
    try {
      body(ctx);
    } catch (const simulation_error&) {
      throw;
    } catch (const std::exception& e) {
      throw simulation_error(ctx.coord(), e.what());
    }
    launch.retire(ctx);
  }
  launch.finish();
}

}  // namespace albsim
