#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "albsim/graph.hpp"
#include "albsim/partition.hpp"
#include "albsim/worklist.hpp"

namespace albsim {

enum class AppKind : std::uint8_t { bfs, sssp, cc, pr, kcore };

std::string_view to_string(AppKind kind);
/// Throws config_error for unknown names.
AppKind parse_app(std::string_view name);

struct AppParams {
  vertex_t source = 0;
  std::uint32_t k = 2;
  double damping = 0.85;
  double tolerance = 1e-6;
};

/// Final per-vertex values of an application.
struct LabelArray {
  enum class Kind : std::uint8_t { distance, component, rank, core_flag };

  static constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();

  Kind kind = Kind::distance;
  std::vector<std::uint64_t> values;  // distance, component and core_flag
  std::vector<double> reals;          // rank

  std::size_t size() const noexcept { return kind == Kind::rank ? reals.size() : values.size(); }

  /// Integer labels must match exactly; ranks within `tolerance`.
  bool equals(const LabelArray& other, double tolerance = 0.0) const;
  /// First index where the labels differ beyond `tolerance`.
  std::optional<std::size_t> first_difference(const LabelArray& other,
                                              double tolerance = 0.0) const;
  /// FNV-1a digest of the label bytes.
  std::uint64_t digest() const;
};

/// An application expressed as an edge operator over bulk-synchronous rounds.
///
/// Within a round every edge application reads labels as of the round start
/// and writes into a per-device buffer through a commutative reduction, so
/// the result of a round does not depend on how a scheduler orders edges.
class App {
 public:
  virtual ~App() = default;

  virtual AppKind kind() const = 0;
  virtual Direction direction() const = 0;
  virtual Reduction reduction() const = 0;
  /// cc and kcore run on the symmetrized view of the input.
  virtual bool needs_symmetric() const { return false; }

  /// Initializes labels for `devices` devices and returns the first frontier.
  /// `g` must outlive the app.
  virtual Worklist init(const Graph& g, std::size_t devices) = 0;

  /// Vertex-local work before the edge phase; may rewrite the frontier.
  virtual void begin_round(Worklist& frontier) { (void)frontier; }

  virtual std::optional<vertex_t> apply(std::size_t device, vertex_t active, edge_t edge) = 0;

  /// Synchronizes device buffers and adds app-driven activations to `next`.
  /// `frontier` is the round's active set in ascending order.
  virtual SyncStats end_round(const Partition& partition, std::span<const vertex_t> frontier,
                              Worklist& next) = 0;

  virtual LabelArray labels() const = 0;
};

/// Throws config_error on invalid parameters (damping outside (0, 1),
/// non-positive tolerance, k == 0).
std::unique_ptr<App> make_app(AppKind kind, const AppParams& params = {});

}  // namespace albsim
