#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "albsim/graph.hpp"

namespace albsim {

/// Reads whitespace-separated "src dst [weight]" lines.
///
/// Blank lines and lines starting with '#' or '%' are skipped, except a
/// "# vertices N" line, which fixes the vertex count (it must cover every id
/// seen). Without it the vertex count is max id + 1. In unweighted mode a
/// third column is accepted and ignored.
///
/// Throws parse_error (with line number) on malformed lines, range_error on id
/// or weight overflow and config_error on negative weights.
Graph load_edge_list(std::istream& in, bool weighted);

/// Binary CSR layout, all integers little-endian:
///
///   offset  size  field
///   0       4     magic "ALBG"
///   4       4     version (u32, currently 1)
///   8       8     |V| (u64)
///   16      8     |E| (u64)
///   24      4     weighted flag (u32, 0 or 1)
///   28      4     reserved (u32, 0)
///   32      8*(|V|+1)  out_offsets (u64)
///   ...     4*|E|      out_targets (u32)
///   ...     4*|E|      out_weights (u32), present only when weighted
inline constexpr std::uint32_t kBinaryVersion = 1;

void write_binary(std::ostream& out, const Graph& g);
Graph read_binary(std::istream& in);

enum class GraphFormat { el, wel, bin };

GraphFormat parse_graph_format(std::string_view name);

/// Loads `path` in the given format. Throws error subclasses; IO failures are
/// reported as config_error naming the path.
Graph load_graph(const std::filesystem::path& path, GraphFormat format);
void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format);

}  // namespace albsim
