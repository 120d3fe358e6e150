#include "albsim/worklist.hpp"

#include <algorithm>
#include <string>

#include "albsim/errors.hpp"

namespace albsim {

Worklist::Worklist(vertex_t num_vertices, Representation rep)
    : rep_(rep), flags_(num_vertices, 0) {}

void Worklist::push(vertex_t v) {
  if (v >= flags_.size()) {
    throw range_error("vertex " + std::to_string(v) + " outside worklist of " +
                      std::to_string(flags_.size()));
  }
  if (flags_[v] != 0) return;
  flags_[v] = 1;
  ++size_;
  if (rep_ == Representation::sparse) items_.push_back(v);
}

bool Worklist::contains(vertex_t v) const { return v < flags_.size() && flags_[v] != 0; }

std::vector<vertex_t> Worklist::vertices() const {
  if (rep_ == Representation::sparse) return items_;
  return sorted();
}

std::vector<vertex_t> Worklist::sorted() const {
  std::vector<vertex_t> out;
  out.reserve(size_);
  for (std::size_t v = 0; v < flags_.size() && out.size() < size_; ++v) {
    if (flags_[v] != 0) out.push_back(static_cast<vertex_t>(v));
  }
  return out;
}

Worklist Worklist::as(Representation rep) const {
  Worklist out(num_vertices(), rep);
  for (vertex_t v : vertices()) out.push(v);
  return out;
}

void Worklist::merge(const Worklist& other) {
  if (other.empty()) return;
  for (vertex_t v : other.vertices()) push(v);
}

void Worklist::clear() {
  if (rep_ == Representation::sparse && items_.size() * 8 < flags_.size()) {
    for (vertex_t v : items_) flags_[v] = 0;
  } else {
    std::fill(flags_.begin(), flags_.end(), 0);
  }
  items_.clear();
  size_ = 0;
}

bool Worklist::same_set(const Worklist& other) const {
  return num_vertices() == other.num_vertices() && size_ == other.size_ &&
         flags_ == other.flags_;
}

PrefixWork compute_prefix(std::span<const vertex_t> work, const Graph& g, Direction direction) {
  PrefixWork prefix;
  prefix.direction = direction;
  prefix.vertices.assign(work.begin(), work.end());
  prefix.cumulative.reserve(work.size());
  edge_t running = 0;
  for (vertex_t v : work) {
    if (v >= g.num_vertices()) throw range_error("vertex " + std::to_string(v) + " out of range");
    running += g.degree(v, direction);
    prefix.cumulative.push_back(running);
  }
  return prefix;
}

EdgeSlot locate_edge(std::span<const edge_t> cumulative, edge_t global_edge,
                     std::vector<std::uint32_t>* probes) {
  const edge_t total = cumulative.empty() ? 0 : cumulative.back();
  if (global_edge >= total) {
    throw range_error("edge " + std::to_string(global_edge) + " outside prefix total " +
                      std::to_string(total));
  }
  if (probes != nullptr) probes->clear();
  // upper_bound by halving: the probe sequence is a function of the answer only.
  std::size_t first = 0;
  std::size_t count = cumulative.size();
  while (count > 0) {
    const std::size_t step = count / 2;
    const std::size_t mid = first + step;
    if (probes != nullptr) probes->push_back(static_cast<std::uint32_t>(mid));
    if (cumulative[mid] <= global_edge) {
      first = mid + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  const edge_t before = first == 0 ? 0 : cumulative[first - 1];
  return {first, global_edge - before};
}

EdgeOwner find_owner(const PrefixWork& prefix, edge_t global_edge,
                     std::vector<std::uint32_t>* probes) {
  const EdgeSlot slot = locate_edge(prefix.cumulative, global_edge, probes);
  return {slot.slot, prefix.vertices[slot.slot], slot.offset};
}

}  // namespace albsim
