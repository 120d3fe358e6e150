#pragma once

#include <cstdint>

#include "albsim/graph.hpp"

namespace albsim {

/// Recursive-matrix generator parameters. Defaults are the Graph500 skew.
struct RmatParams {
  unsigned scale = 16;
  edge_t edge_factor = 16;
  std::uint64_t seed = 1;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  bool weighted = false;
  weight_t max_weight = 100;  // weights drawn uniformly from [1, max_weight]
};

/// Generates 2^scale vertices and edge_factor * 2^scale directed edges.
/// Deterministic for a fixed parameter set; vertex ids are not permuted, so
/// vertex 0 carries the heaviest out-degree under skewed probabilities.
/// Throws config_error for scale outside [1, 31], negative probabilities or
/// probabilities that do not sum to 1 within 1e-9.
Graph generate_rmat(const RmatParams& params);

}  // namespace albsim
