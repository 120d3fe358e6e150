#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "albsim/graph.hpp"

namespace albsim {

/// Contiguous vertex blocks, one per device, balanced by edge count in the
/// traversal direction. An edge belongs to the device that masters its active
/// endpoint; the other endpoint is mirrored there when mastered elsewhere.
struct Partition {
  std::vector<vertex_t> starts;                // size devices + 1
  std::vector<std::vector<vertex_t>> mirrors;  // ascending, per device

  std::size_t num_devices() const noexcept { return mirrors.size(); }
  vertex_t begin(std::size_t device) const { return starts[device]; }
  vertex_t end(std::size_t device) const { return starts[device + 1]; }
  std::size_t owner(vertex_t v) const {
    auto it = std::upper_bound(starts.begin() + 1, starts.end(), v);
    return static_cast<std::size_t>(it - (starts.begin() + 1));
  }
  std::uint64_t num_mirrors() const;
};

/// Throws config_error when devices == 0.
Partition partition_graph(const Graph& g, std::size_t devices, Direction direction);

enum class Reduction : std::uint8_t { min, add };

struct SyncStats {
  std::uint64_t reduce_messages = 0;     // mirror -> master values that carried information
  std::uint64_t broadcast_messages = 0;  // master -> mirror values that changed the mirror
  /// Masters whose value changed because of a mirror contribution, ascending.
  std::vector<vertex_t> updated;

  std::uint64_t messages() const noexcept { return reduce_messages + broadcast_messages; }
  void merge(const SyncStats& other);
};

/// Reduces each device's mirror values into the owning master, then
/// broadcasts masters back to every mirror. `device_values[d]` is indexed by
/// global vertex id; only masters and mirrors of d are read or written.
/// For `add`, mirrors hold partial contributions (identity 0) and are reset to
/// the master's total by the broadcast.
template <class T>
SyncStats sync_labels(const Partition& partition, std::span<std::vector<T>> device_values,
                      Reduction reduction) {
  SyncStats stats;
  const std::size_t devices = partition.num_devices();
  for (std::size_t d = 0; d < devices; ++d) {
    for (vertex_t v : partition.mirrors[d]) {
      const std::size_t master = partition.owner(v);
      T& into = device_values[master][v];
      const T mirror = device_values[d][v];
      if (reduction == Reduction::min) {
        if (mirror < into) {
          into = mirror;
          ++stats.reduce_messages;
          stats.updated.push_back(v);
        }
      } else if (mirror != T{}) {
        into += mirror;
        ++stats.reduce_messages;
        stats.updated.push_back(v);
      }
    }
  }
  for (std::size_t d = 0; d < devices; ++d) {
    for (vertex_t v : partition.mirrors[d]) {
      const T master_value = device_values[partition.owner(v)][v];
      if (device_values[d][v] != master_value) {
        device_values[d][v] = master_value;
        ++stats.broadcast_messages;
      }
    }
  }
  std::sort(stats.updated.begin(), stats.updated.end());
  stats.updated.erase(std::unique(stats.updated.begin(), stats.updated.end()), stats.updated.end());
  return stats;
}

}  // namespace albsim
