#include "albsim/partition.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "albsim/errors.hpp"

namespace albsim {

std::uint64_t Partition::num_mirrors() const {
  std::uint64_t total = 0;
  for (const auto& m : mirrors) total += m.size();
  return total;
}

void SyncStats::merge(const SyncStats& other) {
  reduce_messages += other.reduce_messages;
  broadcast_messages += other.broadcast_messages;
  std::vector<vertex_t> combined;
  combined.reserve(updated.size() + other.updated.size());
  std::merge(updated.begin(), updated.end(), other.updated.begin(), other.updated.end(),
             std::back_inserter(combined));
  combined.erase(std::unique(combined.begin(), combined.end()), combined.end());
  updated = std::move(combined);
}

Partition partition_graph(const Graph& g, std::size_t devices, Direction direction) {
  if (devices == 0) throw config_error("device count must be at least 1");
  const auto offsets = g.offsets(direction);
  const auto targets = g.targets(direction);
  const vertex_t n = g.num_vertices();
  const edge_t m = g.num_edges();

  Partition p;
  p.starts.assign(devices + 1, n);
  p.starts[0] = 0;
  for (std::size_t d = 1; d < devices; ++d) {
    vertex_t start = 0;
    if (m > 0) {
      const edge_t target = (m * d + devices - 1) / devices;
      start = static_cast<vertex_t>(
          std::lower_bound(offsets.begin(), offsets.end() - 1, target) - offsets.begin());
    } else {
      start = static_cast<vertex_t>((std::uint64_t{n} * d) / devices);
    }
    p.starts[d] = std::max(start, p.starts[d - 1]);
  }

  p.mirrors.resize(devices);
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t d = 0; d < devices; ++d) {
    auto& mirrors = p.mirrors[d];
    for (vertex_t v = p.begin(d); v < p.end(d); ++v) {
      for (edge_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        const vertex_t u = targets[e];
        if ((u < p.begin(d) || u >= p.end(d)) && seen[u] == 0) {
          seen[u] = 1;
          mirrors.push_back(u);
        }
      }
    }
    for (vertex_t u : mirrors) seen[u] = 0;
    std::sort(mirrors.begin(), mirrors.end());
  }
  return p;
}

}  // namespace albsim
