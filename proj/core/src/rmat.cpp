#include "albsim/rmat.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

// 53 random bits mapped onto [0, 1); portable across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph generate_rmat(const RmatParams& params) {
  if (params.scale < 1 || params.scale > 31) {
    throw config_error("rmat scale must be in [1, 31], got " + std::to_string(params.scale));
  }
  const double probs[4] = {params.a, params.b, params.c, params.d};
  for (double p : probs) {
    if (!(p >= 0.0)) throw config_error("rmat probabilities must be non-negative");
  }
  const double sum = params.a + params.b + params.c + params.d;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw config_error("rmat probabilities must sum to 1, got " + std::to_string(sum));
  }
  if (params.weighted && params.max_weight == 0) {
    throw config_error("rmat max_weight must be positive");
  }

  const vertex_t n = vertex_t{1} << params.scale;
  const edge_t m = params.edge_factor * n;
  const double ab = params.a + params.b;
  const double abc = ab + params.c;

  std::mt19937_64 rng(params.seed);
  std::vector<vertex_t> sources(m);
  std::vector<vertex_t> targets(m);
  std::vector<weight_t> weights(params.weighted ? m : 0);
  for (edge_t i = 0; i < m; ++i) {
    vertex_t u = 0;
    vertex_t v = 0;
    for (unsigned level = 0; level < params.scale; ++level) {
      const double r = uniform01(rng);
      const vertex_t row = r >= ab ? 1 : 0;
      const vertex_t col = (r >= params.a && r < ab) || r >= abc ? 1 : 0;
      u = (u << 1) | row;
      v = (v << 1) | col;
    }
    sources[i] = u;
    targets[i] = v;
    if (params.weighted) weights[i] = static_cast<weight_t>(1 + rng() % params.max_weight);
  }
  return Graph::from_edges(n, sources, targets, weights, params.weighted);
}

}  // namespace albsim
