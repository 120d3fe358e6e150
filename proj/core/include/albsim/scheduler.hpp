#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "albsim/graph.hpp"
#include "albsim/simt.hpp"
#include "albsim/worklist.hpp"

namespace albsim {

/// Edge-level operator as seen by a scheduler. `edge` indexes the target
/// array of the operator's direction (CSR for push, CSC for pull); `active` is
/// the frontier vertex that owns it. A returned vertex is pushed onto the next
/// frontier.
class EdgeOperator {
 public:
  virtual ~EdgeOperator() = default;
  virtual Direction direction() const = 0;
  virtual std::optional<vertex_t> apply(vertex_t active, edge_t edge) = 0;
};

enum class SchedulerType : std::uint8_t { vertex, edge, twc, lb, alb };
enum class Distribution : std::uint8_t { cyclic, blocked };

std::string_view to_string(SchedulerType type);
std::string_view to_string(Distribution distribution);

/// Threshold that no degree reaches: ALB degenerates to TWC.
inline constexpr edge_t kNoHugeVertices = ~edge_t{0};

struct SchedulerKind {
  SchedulerType type = SchedulerType::alb;
  Distribution distribution = Distribution::cyclic;
  /// Huge-vertex threshold for ALB; unset means the launch's thread count.
  std::optional<edge_t> threshold;

  static SchedulerKind vertex_based() { return {SchedulerType::vertex, Distribution::cyclic, {}}; }
  static SchedulerKind edge_based() { return {SchedulerType::edge, Distribution::blocked, {}}; }
  static SchedulerKind twc() { return {SchedulerType::twc, Distribution::cyclic, {}}; }
  static SchedulerKind lb(Distribution d = Distribution::blocked) { return {SchedulerType::lb, d, {}}; }
  static SchedulerKind alb(Distribution d = Distribution::cyclic,
                           std::optional<edge_t> threshold = std::nullopt) {
    return {SchedulerType::alb, d, threshold};
  }

  /// Accepts "vertex", "edge", "twc", "lb[-cyclic|-blocked]",
  /// "alb[-cyclic|-blocked]". Throws config_error otherwise.
  static SchedulerKind parse(std::string_view name);

  /// Canonical name, e.g. "alb", "alb-blocked", "lb", "lb-cyclic".
  std::string name() const;

  /// Threshold in effect for `config`. Zero is remapped to one.
  edge_t resolved_threshold(const KernelConfig& config) const;

  bool operator==(const SchedulerKind&) const = default;
};

/// TWC degree cut-offs: degree < small_max goes to a thread, degree <
/// medium_max to a warp, anything larger to a whole CTA.
struct TwcCutoffs {
  edge_t small_max = 32;
  edge_t medium_max = 256;

  static TwcCutoffs from(const KernelConfig& config) {
    return {config.warp_size, config.threads_per_cta};
  }
};

/// A binned vertex and the thread that picked it up during inspection.
struct BinnedVertex {
  vertex_t vertex = 0;
  std::uint64_t owner = 0;  // global thread id

  bool operator==(const BinnedVertex&) const = default;
};

struct TwcBins {
  TwcCutoffs cutoffs;
  std::vector<BinnedVertex> small;
  std::vector<BinnedVertex> medium;
  std::vector<BinnedVertex> large;

  bool empty() const noexcept { return small.empty() && medium.empty() && large.empty(); }
  std::size_t size() const noexcept { return small.size() + medium.size() + large.size(); }
};

struct Inspection {
  std::vector<vertex_t> huge;
  TwcBins bins;
};

/// Splits a frontier into huge vertices (degree >= threshold) and TWC bins.
/// Frontier position i is inspected by thread i mod T, which becomes the
/// owner of the vertex if it is binned. Both outputs preserve frontier order.
/// When `metrics` is given an inspect kernel launch and one degree read per
/// vertex are recorded. Throws config_error when threshold is 0.
Inspection inspect(std::span<const vertex_t> frontier, const Graph& g, edge_t threshold,
                   Direction direction, const KernelConfig& config,
                   RoundMetrics* metrics = nullptr,
                   std::optional<TwcCutoffs> cutoffs = std::nullopt);

/// Arithmetic sequence of global edge indices assigned to one thread.
class EdgeAssignment {
 public:
  class iterator {
   public:
    using value_type = edge_t;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(edge_t value, edge_t stride) : value_(value), stride_(stride) {}
    edge_t operator*() const { return value_; }
    iterator& operator++() {
      value_ += stride_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& other) const { return value_ == other.value_; }

   private:
    edge_t value_ = 0;
    edge_t stride_ = 1;
  };

  EdgeAssignment(edge_t first, edge_t stride, edge_t count)
      : first_(first), stride_(stride), count_(count) {}

  edge_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  edge_t operator[](edge_t k) const noexcept { return first_ + k * stride_; }
  iterator begin() const { return {first_, stride_}; }
  iterator end() const { return {first_ + count_ * stride_, stride_}; }

 private:
  edge_t first_;
  edge_t stride_;
  edge_t count_;
};

/// Thread tid gets tid, tid+T, tid+2T, ... below total_edges.
EdgeAssignment assign_cyclic(edge_t total_edges, const KernelConfig& config, std::uint64_t tid);
/// Thread tid gets the chunk [tid*c, (tid+1)*c) clipped to total_edges, with
/// c = ceil(total_edges / T).
EdgeAssignment assign_blocked(edge_t total_edges, const KernelConfig& config, std::uint64_t tid);

/// Processes every edge of every vertex in `prefix`, spreading them over all
/// threads by `distribution` and recovering each edge's owner by binary search
/// (charged per pass). Returns the pushed vertices. Launches nothing when the
/// prefix is empty.
Worklist execute_lb_kernel(const Graph& g, const PrefixWork& prefix, Distribution distribution,
                           const KernelConfig& config, EdgeOperator& op, RoundMetrics& metrics);

/// Processes binned vertices at thread, warp or CTA granularity around each
/// vertex's owner thread. All edges of a vertex are charged to its owner's
/// CTA. Launches nothing when the bins are empty.
Worklist execute_twc_kernel(const Graph& g, const TwcBins& bins, const KernelConfig& config,
                            EdgeOperator& op, RoundMetrics& metrics);

/// Coordinate (COO) view used by the edge-based scheduler: for each edge
/// index in a direction's target array, the vertex that owns it.
class CooCache {
 public:
  std::span<const vertex_t> endpoints(const Graph& g, Direction direction);
  /// Bytes of a full COO copy of `g` (both endpoints plus weights).
  static std::uint64_t footprint(const Graph& g);

 private:
  const Graph* graph_[2] = {nullptr, nullptr};
  std::vector<vertex_t> endpoints_[2];
};

struct SchedulerContext {
  const Graph& graph;
  const KernelConfig& config;
  EdgeOperator& op;
  RoundMetrics& metrics;
  CooCache* coo = nullptr;  // edge-based only; a local cache is used when null
  std::optional<TwcCutoffs> cutoffs = std::nullopt;
};

/// Runs one round of `kind` over `frontier` and returns the pushed vertices.
/// Kernels run in the order inspect, lb, twc (ALB) so the log mirrors the
/// generated-code loop body.
Worklist run_scheduler(const SchedulerKind& kind, std::span<const vertex_t> frontier,
                       SchedulerContext& ctx);

}  // namespace albsim
