#pragma once

#include <cstdint>
#include <vector>

#include "kmclust/graph.hpp"

namespace kmclust {

struct RandomInstanceSpec {
  VertexId n = 1;
  double density = 0.1;      // fraction of the n(n-1)/2 possible edges
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 10;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 10;
  int max_retries = 32;      // fresh sub-seed per retry until connected
};

struct RandomInstance {
  WeightedGraph graph;
  CostVector costs;
};

// G(n, p)-style sampler with integer weights/costs drawn uniformly from the
// given ranges. Deterministic in seed; retries with derived sub-seeds until
// the graph is connected and throws if the density cannot produce one.
RandomInstance gen_random_instance(const RandomInstanceSpec& spec, std::uint64_t seed);

// Adversarial family: hubs u, w plus b three-edge paths u - u_i - w_i - w.
// Vertex ids: u = 0, w = 1, u_i = 2i, w_i = 2i + 1 (1-based i).
struct LowerBoundInstance {
  int b = 1;
  int c = 3;                   // L = n^c
  Rat L;
  std::vector<int> X, Y;       // length b, X[i] + Y[i] >= 1
  WeightedGraph graph;
  CostVector costs;            // 1 on u and w, L elsewhere

  static VertexId u_id() { return 0; }
  static VertexId w_id() { return 1; }
  static VertexId ui_id(int i) { return static_cast<VertexId>(2 * i); }
  static VertexId wi_id(int i) { return static_cast<VertexId>(2 * i + 1); }
};

LowerBoundInstance gen_lower_bound_instance(int b, int c, const std::vector<int>& X,
                                            const std::vector<int>& Y);

// X, Y drawn per index uniformly from {(1,0), (0,1), (1,1)}.
LowerBoundInstance gen_lower_bound_instance_random(int b, int c, std::uint64_t seed);

// Re-checks every structural invariant of the family; throws on violation.
void validate_lower_bound_structure(const LowerBoundInstance& inst);

}  // namespace kmclust
