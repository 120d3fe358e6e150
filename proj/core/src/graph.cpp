#include "albsim/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "albsim/errors.hpp"

namespace albsim {

Graph::Graph() : out_offsets_(1, 0) {}

Graph Graph::from_edges(vertex_t num_vertices, std::span<const vertex_t> sources,
                        std::span<const vertex_t> targets, std::span<const weight_t> weights,
                        bool weighted) {
  weighted = weighted || !weights.empty();
  if (sources.size() != targets.size()) {
    throw config_error("edge arrays differ in length");
  }
  if (weighted && weights.size() != sources.size()) {
    throw config_error("weight array does not match edge count");
  }
  std::vector<edge_t> offsets(std::size_t{num_vertices} + 1, 0);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] >= num_vertices || targets[i] >= num_vertices) {
      throw range_error("edge " + std::to_string(i) + " references vertex outside [0, " +
                        std::to_string(num_vertices) + ")");
    }
    ++offsets[sources[i] + 1];
  }
  for (std::size_t v = 0; v < num_vertices; ++v) offsets[v + 1] += offsets[v];

  std::vector<edge_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<vertex_t> out(sources.size());
  std::vector<weight_t> w(weights.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const edge_t pos = cursor[sources[i]]++;
    out[pos] = targets[i];
    if (!weights.empty()) w[pos] = weights[i];
  }

  Graph g;
  g.num_vertices_ = num_vertices;
  g.weighted_ = weighted;
  g.out_offsets_ = std::move(offsets);
  g.out_targets_ = std::move(out);
  g.out_weights_ = std::move(w);
  return g;
}

Graph Graph::from_csr(vertex_t num_vertices, std::vector<edge_t> offsets,
                      std::vector<vertex_t> targets, std::vector<weight_t> weights,
                      bool weighted) {
  weighted = weighted || !weights.empty();
  if (offsets.size() != std::size_t{num_vertices} + 1) {
    throw config_error("offset array must hold |V|+1 entries");
  }
  if (offsets.front() != 0) throw config_error("offsets must start at 0");
  if (!std::is_sorted(offsets.begin(), offsets.end())) {
    throw config_error("offsets must be non-decreasing");
  }
  if (offsets.back() != targets.size()) {
    throw config_error("last offset must equal |E|");
  }
  for (vertex_t t : targets) {
    if (t >= num_vertices) throw range_error("target " + std::to_string(t) + " out of range");
  }
  if (weighted && weights.size() != targets.size()) {
    throw config_error("weight array does not match edge count");
  }
  Graph g;
  g.num_vertices_ = num_vertices;
  g.weighted_ = weighted;
  g.out_offsets_ = std::move(offsets);
  g.out_targets_ = std::move(targets);
  g.out_weights_ = std::move(weights);
  return g;
}

std::span<const edge_t> Graph::in_offsets() const {
  if (!has_csc_) throw std::logic_error("CSC not built");
  return in_offsets_;
}

std::span<const vertex_t> Graph::in_targets() const {
  if (!has_csc_) throw std::logic_error("CSC not built");
  return in_targets_;
}

std::span<const weight_t> Graph::in_weights() const {
  if (!has_csc_) throw std::logic_error("CSC not built");
  return in_weights_;
}

edge_t Graph::in_degree(vertex_t v) const {
  if (!has_csc_) throw std::logic_error("CSC not built");
  return in_offsets_[v + 1] - in_offsets_[v];
}

edge_t Graph::max_degree(Direction d) const {
  const auto offsets = this->offsets(d);
  edge_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets.size(); ++v) {
    best = std::max(best, offsets[v + 1] - offsets[v]);
  }
  return best;
}

Graph build_csc(Graph g) {
  if (g.has_csc_) return g;
  const std::size_t n = g.num_vertices_;
  std::vector<edge_t> offsets(n + 1, 0);
  for (vertex_t t : g.out_targets_) ++offsets[t + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  std::vector<edge_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<vertex_t> sources(g.out_targets_.size());
  std::vector<weight_t> weights(g.out_weights_.size());
  for (vertex_t u = 0; u < n; ++u) {
    for (edge_t e = g.out_offsets_[u]; e < g.out_offsets_[u + 1]; ++e) {
      const edge_t pos = cursor[g.out_targets_[e]]++;
      sources[pos] = u;
      if (g.weighted_) weights[pos] = g.out_weights_[e];
    }
  }
  g.in_offsets_ = std::move(offsets);
  g.in_targets_ = std::move(sources);
  g.in_weights_ = std::move(weights);
  g.has_csc_ = true;
  return g;
}

Graph transpose(const Graph& g) {
  const Graph with_csc = build_csc(g);
  const auto in_offsets = with_csc.in_offsets();
  const auto in_targets = with_csc.in_targets();
  const auto in_weights = with_csc.in_weights();
  return Graph::from_csr(g.num_vertices(), {in_offsets.begin(), in_offsets.end()},
                         {in_targets.begin(), in_targets.end()},
                         {in_weights.begin(), in_weights.end()}, g.weighted());
}

Graph symmetrize(const Graph& g) {
  std::vector<std::pair<vertex_t, vertex_t>> pairs;
  pairs.reserve(g.num_edges() * 2);
  const auto offsets = g.out_offsets();
  const auto targets = g.out_targets();
  for (vertex_t u = 0; u < g.num_vertices(); ++u) {
    for (edge_t e = offsets[u]; e < offsets[u + 1]; ++e) {
      const vertex_t v = targets[e];
      if (u == v) continue;
      pairs.emplace_back(u, v);
      pairs.emplace_back(v, u);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<vertex_t> src(pairs.size());
  std::vector<vertex_t> dst(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    src[i] = pairs[i].first;
    dst[i] = pairs[i].second;
  }
  return build_csc(Graph::from_edges(g.num_vertices(), src, dst));
}

}  // namespace albsim
