#pragma once

#include <span>
#include <vector>

#include "albsim/types.hpp"

namespace albsim {

/// Immutable adjacency in CSR form, with an optional CSC mirror.
///
/// Vertex ids are dense in [0, num_vertices). Duplicate edges and self-loops
/// are stored as given. Edge weights, when present, are aligned with the
/// target arrays of each representation.
class Graph {
 public:
  Graph();

  /// Builds the CSR from parallel edge arrays. Edges of one source keep their
  /// input order. `weights` is either empty or the same length as `sources`;
  /// a non-empty weight array implies `weighted`.
  static Graph from_edges(vertex_t num_vertices, std::span<const vertex_t> sources,
                          std::span<const vertex_t> targets,
                          std::span<const weight_t> weights = {}, bool weighted = false);

  /// Adopts prebuilt CSR arrays after checking every structural invariant.
  static Graph from_csr(vertex_t num_vertices, std::vector<edge_t> offsets,
                        std::vector<vertex_t> targets, std::vector<weight_t> weights = {},
                        bool weighted = false);

  vertex_t num_vertices() const noexcept { return num_vertices_; }
  edge_t num_edges() const noexcept { return out_targets_.size(); }
  bool weighted() const noexcept { return weighted_; }
  bool has_csc() const noexcept { return has_csc_; }

  std::span<const edge_t> out_offsets() const noexcept { return out_offsets_; }
  std::span<const vertex_t> out_targets() const noexcept { return out_targets_; }
  std::span<const weight_t> out_weights() const noexcept { return out_weights_; }

  // The in_* accessors throw std::logic_error unless has_csc().
  std::span<const edge_t> in_offsets() const;
  std::span<const vertex_t> in_targets() const;
  std::span<const weight_t> in_weights() const;

  std::span<const edge_t> offsets(Direction d) const {
    return d == Direction::push ? out_offsets() : in_offsets();
  }
  std::span<const vertex_t> targets(Direction d) const {
    return d == Direction::push ? out_targets() : in_targets();
  }
  std::span<const weight_t> weights(Direction d) const {
    return d == Direction::push ? out_weights() : in_weights();
  }

  edge_t out_degree(vertex_t v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  edge_t in_degree(vertex_t v) const;
  edge_t degree(vertex_t v, Direction d) const {
    return d == Direction::push ? out_degree(v) : in_degree(v);
  }
  edge_t max_degree(Direction d) const;

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_csc(Graph g);

  vertex_t num_vertices_ = 0;
  bool weighted_ = false;
  bool has_csc_ = false;
  std::vector<edge_t> out_offsets_;
  std::vector<vertex_t> out_targets_;
  std::vector<weight_t> out_weights_;
  std::vector<edge_t> in_offsets_;
  std::vector<vertex_t> in_targets_;
  std::vector<weight_t> in_weights_;
};

/// Populates the CSC mirror by a stable counting sort over the CSR edges.
/// In-edges of a vertex appear in ascending source order.
Graph build_csc(Graph g);

/// The reversed graph as a fresh CSR (no CSC).
Graph transpose(const Graph& g);

/// Simple undirected view: every unordered pair {u, v} with u != v that is
/// connected in either direction appears once in each direction. Self-loops
/// and parallel edges are dropped; weights are not carried. CSC is populated.
Graph symmetrize(const Graph& g);

}  // namespace albsim
