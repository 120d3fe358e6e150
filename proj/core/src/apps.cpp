#include "albsim/apps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "albsim/errors.hpp"

namespace albsim {

std::string_view to_string(AppKind kind) {
  switch (kind) {
    case AppKind::bfs:
      return "bfs";
    case AppKind::sssp:
      return "sssp";
    case AppKind::cc:
      return "cc";
    case AppKind::pr:
      return "pr";
    case AppKind::kcore:
      return "kcore";
  }
  return "?";
}

AppKind parse_app(std::string_view name) {
  for (AppKind k : {AppKind::bfs, AppKind::sssp, AppKind::cc, AppKind::pr, AppKind::kcore}) {
    if (name == to_string(k)) return k;
  }
  throw config_error("unknown app '" + std::string(name) + "'");
}

std::optional<std::size_t> LabelArray::first_difference(const LabelArray& other,
                                                        double tolerance) const {
  if (kind != other.kind) return 0;
  const std::size_t n = std::min(size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (kind == Kind::rank) {
      if (!(std::abs(reals[i] - other.reals[i]) <= tolerance)) return i;
    } else if (values[i] != other.values[i]) {
      return i;
    }
  }
  if (size() != other.size()) return n;
  return std::nullopt;
}

bool LabelArray::equals(const LabelArray& other, double tolerance) const {
  return !first_difference(other, tolerance).has_value();
}

std::uint64_t LabelArray::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(kind));
  if (kind == Kind::rank) {
    for (double r : reals) mix(std::bit_cast<std::uint64_t>(r));
  } else {
    for (std::uint64_t v : values) mix(v);
  }
  return h;
}

namespace {

// Min-reduction apps: bfs, sssp and cc. Reads come from `labels_` (frozen for
// the round); writes go to the device's copy and are min-synced at round end.
class MinApp : public App {
 public:
  Direction direction() const override { return Direction::push; }
  Reduction reduction() const override { return Reduction::min; }

  Worklist init(const Graph& g, std::size_t devices) override {
    graph_ = &g;
    targets_ = g.out_targets();
    labels_.assign(g.num_vertices(), LabelArray::kInfinity);
    Worklist first(g.num_vertices(), Worklist::Representation::dense);
    seed(first);
    device_.assign(devices, labels_);
    return first;
  }

  void begin_round(Worklist& /*frontier*/) override {
    for (auto& copy : device_) copy = labels_;
  }

  std::optional<vertex_t> apply(std::size_t device, vertex_t active, edge_t edge) override {
    const vertex_t dst = targets_[edge];
    const std::uint64_t candidate = relax(active, edge);
    std::uint64_t& slot = device_[device][dst];
    if (candidate < slot) {
      slot = candidate;
      return dst;
    }
    return std::nullopt;
  }

  SyncStats end_round(const Partition& partition, std::span<const vertex_t> /*frontier*/,
                      Worklist& next) override {
    SyncStats stats = sync_labels<std::uint64_t>(partition, device_, Reduction::min);
    for (std::size_t d = 0; d < partition.num_devices(); ++d) {
      for (vertex_t v = partition.begin(d); v < partition.end(d); ++v) {
        if (device_[d][v] < labels_[v]) {
          labels_[v] = device_[d][v];
          next.push(v);
        }
      }
    }
    return stats;
  }

 protected:
  virtual void seed(Worklist& first) = 0;
  virtual std::uint64_t relax(vertex_t src, edge_t edge) const = 0;

  const Graph* graph_ = nullptr;
  std::span<const vertex_t> targets_;
  std::vector<std::uint64_t> labels_;
  std::vector<std::vector<std::uint64_t>> device_;
};

class Bfs : public MinApp {
 public:
  explicit Bfs(vertex_t source) : source_(source) {}
  AppKind kind() const override { return AppKind::bfs; }
  LabelArray labels() const override { return {LabelArray::Kind::distance, labels_, {}}; }

 protected:
  void seed(Worklist& first) override {
    if (source_ >= graph_->num_vertices()) {
      throw range_error("source " + std::to_string(source_) + " outside graph of " +
                        std::to_string(graph_->num_vertices()) + " vertices");
    }
    labels_[source_] = 0;
    first.push(source_);
  }
  std::uint64_t relax(vertex_t src, edge_t /*edge*/) const override { return labels_[src] + 1; }

  vertex_t source_;
};

class Sssp : public Bfs {
 public:
  using Bfs::Bfs;
  AppKind kind() const override { return AppKind::sssp; }

 protected:
  void seed(Worklist& first) override {
    weights_ = graph_->weighted() ? graph_->out_weights() : std::span<const weight_t>{};
    Bfs::seed(first);
  }
  std::uint64_t relax(vertex_t src, edge_t edge) const override {
    return labels_[src] + (weights_.empty() ? 1 : weights_[edge]);
  }

  std::span<const weight_t> weights_;
};

class Cc : public MinApp {
 public:
  AppKind kind() const override { return AppKind::cc; }
  bool needs_symmetric() const override { return true; }
  LabelArray labels() const override { return {LabelArray::Kind::component, labels_, {}}; }

 protected:
  void seed(Worklist& first) override {
    for (vertex_t v = 0; v < graph_->num_vertices(); ++v) {
      labels_[v] = v;
      first.push(v);
    }
  }
  std::uint64_t relax(vertex_t src, edge_t /*edge*/) const override { return labels_[src]; }
};

// Residual pagerank in pull form. Invariant after every round:
//   rank[v] + residual[v] = (1 - d) + d * sum_{u -> v} rank[u] / outdeg(u)
// so stopping once every residual is <= tolerance bounds the fixed-point error.
class PageRank : public App {
 public:
  PageRank(double damping, double tolerance) : damping_(damping), tolerance_(tolerance) {}

  AppKind kind() const override { return AppKind::pr; }
  Direction direction() const override { return Direction::pull; }
  Reduction reduction() const override { return Reduction::add; }

  Worklist init(const Graph& g, std::size_t devices) override {
    graph_ = &g;
    const vertex_t n = g.num_vertices();
    rank_.assign(n, 0.0);
    residual_.assign(n, 1.0 - damping_);
    delta_.assign(n, 0.0);
    contribution_.assign(g.num_edges(), 0.0);
    device_.assign(devices, std::vector<double>(n, 0.0));
    return pending();
  }

  // Folds pending residuals into ranks and activates every vertex with an
  // in-neighbour that has something to push.
  void begin_round(Worklist& frontier) override {
    const auto out_offsets = graph_->out_offsets();
    const auto out_targets = graph_->out_targets();
    std::fill(delta_.begin(), delta_.end(), 0.0);
    Worklist pull(graph_->num_vertices(), Worklist::Representation::dense);
    for (vertex_t u : frontier.sorted()) {
      rank_[u] += residual_[u];
      const edge_t degree = graph_->out_degree(u);
      if (degree > 0) delta_[u] = damping_ * residual_[u] / static_cast<double>(degree);
      residual_[u] = 0.0;
      if (delta_[u] == 0.0) continue;
      for (edge_t e = out_offsets[u]; e < out_offsets[u + 1]; ++e) pull.push(out_targets[e]);
    }
    frontier = std::move(pull);
  }

  std::optional<vertex_t> apply(std::size_t /*device*/, vertex_t /*active*/,
                                edge_t edge) override {
    contribution_[edge] = delta_[graph_->in_targets()[edge]];
    return std::nullopt;
  }

  SyncStats end_round(const Partition& partition, std::span<const vertex_t> frontier,
                      Worklist& next) override {
    // Contributions are summed per vertex in CSC order, independent of which
    // thread applied which edge.
    const auto in_offsets = graph_->in_offsets();
    for (vertex_t v : frontier) {
      double sum = 0.0;
      for (edge_t e = in_offsets[v]; e < in_offsets[v + 1]; ++e) sum += contribution_[e];
      device_[partition.owner(v)][v] += sum;
    }
    SyncStats stats = sync_labels<double>(partition, device_, Reduction::add);
    for (vertex_t v : frontier) {
      const std::size_t d = partition.owner(v);
      residual_[v] += device_[d][v];
      device_[d][v] = 0.0;
    }
    for (std::size_t d = 0; d < partition.num_devices(); ++d) {
      for (vertex_t v : partition.mirrors[d]) device_[d][v] = 0.0;
    }
    next.merge(pending());
    return stats;
  }

  LabelArray labels() const override { return {LabelArray::Kind::rank, {}, rank_}; }

 private:
  Worklist pending() const {
    Worklist out(graph_->num_vertices(), Worklist::Representation::dense);
    for (vertex_t v = 0; v < graph_->num_vertices(); ++v) {
      if (residual_[v] > tolerance_) out.push(v);
    }
    return out;
  }

  double damping_;
  double tolerance_;
  const Graph* graph_ = nullptr;
  std::vector<double> rank_;
  std::vector<double> residual_;
  std::vector<double> delta_;
  std::vector<double> contribution_;
  std::vector<std::vector<double>> device_;
};

// Fixed-k core membership in pull form: each active vertex recounts its live
// neighbours; vertices below k die together at round end and wake their
// surviving neighbours.
class KCore : public App {
 public:
  explicit KCore(std::uint32_t k) : k_(k) {}

  AppKind kind() const override { return AppKind::kcore; }
  Direction direction() const override { return Direction::pull; }
  Reduction reduction() const override { return Reduction::add; }
  bool needs_symmetric() const override { return true; }

  Worklist init(const Graph& g, std::size_t devices) override {
    graph_ = &g;
    alive_.assign(g.num_vertices(), 1);
    device_.assign(devices, std::vector<std::uint64_t>(g.num_vertices(), 0));
    Worklist first(g.num_vertices(), Worklist::Representation::dense);
    for (vertex_t v = 0; v < g.num_vertices(); ++v) first.push(v);
    return first;
  }

  std::optional<vertex_t> apply(std::size_t device, vertex_t active, edge_t edge) override {
    if (alive_[graph_->in_targets()[edge]] != 0) device_[device][active] += 1;
    return std::nullopt;
  }

  SyncStats end_round(const Partition& partition, std::span<const vertex_t> frontier,
                      Worklist& next) override {
    SyncStats stats = sync_labels<std::uint64_t>(partition, device_, Reduction::add);
    std::vector<vertex_t> dying;
    for (vertex_t v : frontier) {
      const std::size_t d = partition.owner(v);
      if (device_[d][v] < k_) dying.push_back(v);
      device_[d][v] = 0;
    }
    for (std::size_t d = 0; d < partition.num_devices(); ++d) {
      for (vertex_t v : partition.mirrors[d]) device_[d][v] = 0;
    }
    for (vertex_t v : dying) alive_[v] = 0;
    const auto offsets = graph_->out_offsets();
    const auto targets = graph_->out_targets();
    for (vertex_t v : dying) {
      for (edge_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        if (alive_[targets[e]] != 0) next.push(targets[e]);
      }
    }
    return stats;
  }

  LabelArray labels() const override {
    LabelArray out{LabelArray::Kind::core_flag, {}, {}};
    out.values.assign(alive_.begin(), alive_.end());
    return out;
  }

 private:
  std::uint32_t k_;
  const Graph* graph_ = nullptr;
  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<std::uint64_t>> device_;
};

}  // namespace

std::unique_ptr<App> make_app(AppKind kind, const AppParams& params) {
  switch (kind) {
    case AppKind::bfs:
      return std::make_unique<Bfs>(params.source);
    case AppKind::sssp:
      return std::make_unique<Sssp>(params.source);
    case AppKind::cc:
      return std::make_unique<Cc>();
    case AppKind::pr:
      if (!(params.damping > 0.0 && params.damping < 1.0)) {
        throw config_error("damping must be in (0, 1)");
      }
      if (!(params.tolerance > 0.0)) throw config_error("tolerance must be positive");
      return std::make_unique<PageRank>(params.damping, params.tolerance);
    case AppKind::kcore:
      if (params.k == 0) throw config_error("k must be at least 1");
      return std::make_unique<KCore>(params.k);
  }
  throw config_error("unknown app");
}

}  // namespace albsim
