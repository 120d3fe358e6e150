#include "albsim/graph_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Parses a non-negative integer token; negative values are reported through `negative`.
std::uint64_t parse_unsigned(std::string_view token, std::size_t line, const char* what,
                             bool* negative = nullptr) {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '-') {
    if (negative != nullptr && digits.size() > 1) {
      *negative = true;
      return 0;
    }
    throw parse_error(std::string("negative ") + what + " '" + std::string(token) + "'", line);
  }
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw range_error("line " + std::to_string(line) + ": " + what + " '" + std::string(token) +
                      "' overflows");
  }
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw parse_error(std::string("expected integer ") + what + ", got '" + std::string(token) +
                          "'",
                      line);
  }
  return value;
}

vertex_t parse_vertex(std::string_view token, std::size_t line) {
  const std::uint64_t id = parse_unsigned(token, line, "vertex id");
  if (id > kMaxVertexId) {
    throw range_error("line " + std::to_string(line) + ": vertex id " + std::string(token) +
                      " exceeds " + std::to_string(kMaxVertexId));
  }
  return static_cast<vertex_t>(id);
}

// "# vertices N" / "#vertices N"
bool parse_vertex_header(std::string_view line, std::size_t lineno, std::uint64_t& count) {
  line.remove_prefix(1);
  const auto tokens = split_tokens(line);
  if (tokens.size() != 2 || tokens[0] != "vertices") return false;
  count = parse_unsigned(tokens[1], lineno, "vertex count");
  if (count > std::uint64_t{kMaxVertexId} + 1) {
    throw range_error("line " + std::to_string(lineno) + ": vertex count too large");
  }
  return true;
}

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in, const char* field) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw parse_error(std::string("truncated binary graph while reading ") + field);
  }
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{bytes[i]} << (8 * i);
  return static_cast<T>(value);
}

template <class T>
std::vector<T> get_array(std::istream& in, std::uint64_t count, const char* field) {
  std::vector<T> values;
  values.reserve(std::min<std::uint64_t>(count, std::uint64_t{1} << 20));
  for (std::uint64_t i = 0; i < count; ++i) values.push_back(get_le<T>(in, field));
  return values;
}

constexpr std::array<char, 4> kMagic = {'A', 'L', 'B', 'G'};

}  // namespace

Graph load_edge_list(std::istream& in, bool weighted) {
  std::vector<vertex_t> sources;
  std::vector<vertex_t> targets;
  std::vector<weight_t> weights;
  std::uint64_t max_id_plus_one = 0;
  std::uint64_t header_vertices = 0;
  bool has_header = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r\v\f");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') {
      std::uint64_t count = 0;
      if (view[first] == '#' && parse_vertex_header(view.substr(first), lineno, count)) {
        header_vertices = count;
        has_header = true;
      }
      continue;
    }
    const auto tokens = split_tokens(view);
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw parse_error("expected 'src dst" + std::string(weighted ? " weight" : " [weight]") +
                            "', got " + std::to_string(tokens.size()) + " fields",
                        lineno);
    }
    if (weighted && tokens.size() != 3) throw parse_error("missing edge weight", lineno);

    const vertex_t src = parse_vertex(tokens[0], lineno);
    const vertex_t dst = parse_vertex(tokens[1], lineno);
    if (weighted) {
      bool negative = false;
      const std::uint64_t w = parse_unsigned(tokens[2], lineno, "weight", &negative);
      if (negative) {
        throw config_error("line " + std::to_string(lineno) + ": negative edge weight '" +
                           std::string(tokens[2]) + "'");
      }
      if (w > std::numeric_limits<weight_t>::max()) {
        throw range_error("line " + std::to_string(lineno) + ": weight overflows 32 bits");
      }
      weights.push_back(static_cast<weight_t>(w));
    }
    sources.push_back(src);
    targets.push_back(dst);
    max_id_plus_one = std::max<std::uint64_t>(max_id_plus_one, std::uint64_t{std::max(src, dst)} + 1);
  }

  std::uint64_t num_vertices = max_id_plus_one;
  if (has_header) {
    if (header_vertices < max_id_plus_one) {
      throw range_error("vertex header declares " + std::to_string(header_vertices) +
                        " vertices but ids reach " + std::to_string(max_id_plus_one - 1));
    }
    num_vertices = header_vertices;
  }
  return Graph::from_edges(static_cast<vertex_t>(num_vertices), sources, targets, weights,
                           weighted);
}

void write_binary(std::ostream& out, const Graph& g) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint64_t>(out, g.num_vertices());
  put_le<std::uint64_t>(out, g.num_edges());
  put_le<std::uint32_t>(out, g.weighted() ? 1 : 0);
  put_le<std::uint32_t>(out, 0);
  for (edge_t o : g.out_offsets()) put_le<std::uint64_t>(out, o);
  for (vertex_t t : g.out_targets()) put_le<std::uint32_t>(out, t);
  if (g.weighted()) {
    for (weight_t w : g.out_weights()) put_le<std::uint32_t>(out, w);
  }
  if (!out) throw config_error("failed writing binary graph");
}

Graph read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw parse_error("not a binary graph (bad magic)");
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kBinaryVersion) {
    throw parse_error("unsupported binary graph version " + std::to_string(version));
  }
  const auto num_vertices = get_le<std::uint64_t>(in, "|V|");
  const auto num_edges = get_le<std::uint64_t>(in, "|E|");
  const auto weighted = get_le<std::uint32_t>(in, "weighted flag");
  (void)get_le<std::uint32_t>(in, "reserved");
  if (num_vertices > std::uint64_t{kMaxVertexId} + 1) throw range_error("|V| too large");
  if (weighted > 1) throw parse_error("weighted flag must be 0 or 1");

  auto offsets = get_array<edge_t>(in, num_vertices + 1, "offsets");
  auto targets = get_array<vertex_t>(in, num_edges, "targets");
  std::vector<weight_t> weights;
  if (weighted != 0) weights = get_array<weight_t>(in, num_edges, "weights");
  return Graph::from_csr(static_cast<vertex_t>(num_vertices), std::move(offsets),
                         std::move(targets), std::move(weights), weighted != 0);
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "el") return GraphFormat::el;
  if (name == "wel") return GraphFormat::wel;
  if (name == "bin") return GraphFormat::bin;
  throw config_error("unknown graph format '" + std::string(name) + "'");
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path, format == GraphFormat::bin ? std::ios::binary : std::ios::in);
  if (!in) throw config_error("cannot open '" + path.string() + "'");
  switch (format) {
    case GraphFormat::el:
      return load_edge_list(in, false);
    case GraphFormat::wel:
      return load_edge_list(in, true);
    case GraphFormat::bin:
      return read_binary(in);
  }
  throw config_error("unknown graph format");
}

void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path, format == GraphFormat::bin ? std::ios::binary : std::ios::out);
  if (!out) throw config_error("cannot create '" + path.string() + "'");
  if (format == GraphFormat::bin) {
    write_binary(out, g);
    return;
  }
  const bool with_weights = format == GraphFormat::wel;
  out << "# vertices " << g.num_vertices() << '\n';
  const auto offsets = g.out_offsets();
  const auto targets = g.out_targets();
  const auto weights = g.out_weights();
  for (vertex_t u = 0; u < g.num_vertices(); ++u) {
    for (edge_t e = offsets[u]; e < offsets[u + 1]; ++e) {
      out << u << ' ' << targets[e];
      if (with_weights) out << ' ' << (g.weighted() ? weights[e] : 1);
      out << '\n';
    }
  }
  if (!out) throw config_error("failed writing '" + path.string() + "'");
}

}  // namespace albsim
