#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "albsim/graph.hpp"

namespace albsim {

/// Frontier of active vertices.
///
/// A dense worklist is a flag per vertex and enumerates in ascending id order.
/// A sparse worklist keeps an insertion-ordered id list; pushes of a vertex
/// already present are ignored.
class Worklist {
 public:
  enum class Representation : std::uint8_t { dense, sparse };

  Worklist() = default;
  explicit Worklist(vertex_t num_vertices, Representation rep = Representation::sparse);

  /// Throws range_error when v >= num_vertices().
  void push(vertex_t v);
  bool contains(vertex_t v) const;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  vertex_t num_vertices() const noexcept { return static_cast<vertex_t>(flags_.size()); }
  Representation representation() const noexcept { return rep_; }

  /// Active ids: ascending for dense, insertion order for sparse.
  std::vector<vertex_t> vertices() const;
  /// Active ids in ascending order regardless of representation.
  std::vector<vertex_t> sorted() const;

  /// Converts between representations; the set of active vertices is unchanged.
  /// Dense to sparse yields ascending order.
  Worklist as(Representation rep) const;

  /// Pushes every vertex of `other` in its enumeration order.
  void merge(const Worklist& other);
  void clear();

  /// Set equality, ignoring representation and order.
  bool same_set(const Worklist& other) const;

 private:
  Representation rep_ = Representation::sparse;
  std::vector<std::uint8_t> flags_;
  std::vector<vertex_t> items_;  // sparse only
  std::size_t size_ = 0;
};

/// Degree prefix sums over a list of vertices.
struct PrefixWork {
  Direction direction = Direction::push;
  std::vector<vertex_t> vertices;
  /// Inclusive running degree sums; the leading zero is implicit.
  std::vector<edge_t> cumulative;

  edge_t total_edges() const noexcept { return cumulative.empty() ? 0 : cumulative.back(); }
  bool empty() const noexcept { return total_edges() == 0; }
};

PrefixWork compute_prefix(std::span<const vertex_t> work, const Graph& g, Direction direction);

/// Slot of a global edge index within a cumulative array.
struct EdgeSlot {
  std::size_t slot = 0;
  edge_t offset = 0;
};

/// Where a global edge index lands inside a PrefixWork.
struct EdgeOwner {
  std::size_t slot = 0;  // index into PrefixWork::vertices
  vertex_t vertex = 0;
  edge_t offset = 0;  // edge offset within the vertex's adjacency
};

/// Binary search for the unique slot i with
/// cumulative[i-1] <= global_edge < cumulative[i]. When `probes` is non-null
/// it receives the visited cumulative indices in order; the sequence depends
/// only on the resulting slot, and its length is at most
/// ceil(log2(cumulative.size())) + 1.
/// Throws range_error when global_edge >= the last cumulative entry.
EdgeSlot locate_edge(std::span<const edge_t> cumulative, edge_t global_edge,
                      std::vector<std::uint32_t>* probes = nullptr);

EdgeOwner find_owner(const PrefixWork& prefix, edge_t global_edge,
                     std::vector<std::uint32_t>* probes = nullptr);

}  // namespace albsim
