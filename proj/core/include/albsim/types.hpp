#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace albsim {

using vertex_t = std::uint32_t;
using edge_t = std::uint64_t;
using weight_t = std::uint32_t;

/// Largest representable vertex id; ids at or above this are rejected by loaders.
inline constexpr vertex_t kMaxVertexId = std::numeric_limits<vertex_t>::max() - 1;

/// Traversal direction of an operator. Push walks out-edges (CSR), pull walks
/// in-edges (CSC).
enum class Direction : std::uint8_t { push, pull };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::push ? "push" : "pull";
}

}  // namespace albsim
