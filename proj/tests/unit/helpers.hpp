#pragma once

#include <memory>

#include "kmclust/dist_engine.hpp"
#include "kmclust/generators.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/partition.hpp"
#include "kmclust/rng.hpp"

namespace kmclust::testing {

// Owns everything an engine call needs.
struct Harness {
  WeightedGraph graph;
  CostVector costs;
  std::unique_ptr<Adjacency> adj;
  PartitionMap part;
  std::unique_ptr<Cluster> cluster;
  RoundLedger ledger;
  EngineContext ctx;

  Harness(WeightedGraph g, CostVector c, MachineId k, SsspMode mode, Rat eps,
          std::uint64_t seed = 1)
      : graph(std::move(g)), costs(std::move(c)) {
    adj = std::make_unique<Adjacency>(graph);
    part = random_partition(graph.n, k, seed);
    cluster = std::make_unique<Cluster>(k);
    ctx = make_context(graph, *adj, part, mode, eps, *cluster, ledger);
  }
};

inline WeightedGraph path_graph(const std::vector<std::int64_t>& weights) {
  WeightedGraph g;
  g.n = static_cast<VertexId>(weights.size()) + 1;
  for (std::size_t i = 0; i < weights.size(); ++i)
    g.edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), Rat{weights[i]}});
  return g;
}

inline WeightedGraph star_graph(VertexId leaves, std::int64_t arm = 1) {
  WeightedGraph g;
  g.n = leaves + 1;
  for (VertexId i = 1; i <= leaves; ++i) g.edges.push_back({0, i, Rat{arm}});
  return g;
}

inline WeightedGraph complete_graph(VertexId n, std::int64_t w = 1) {
  WeightedGraph g;
  g.n = n;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) g.edges.push_back({u, v, Rat{w}});
  return g;
}

inline CostVector uniform_costs(VertexId n, Rat f = Rat{1}) {
  CostVector c;
  c.f.assign(n, f);
  return c;
}

inline RandomInstance random_instance(VertexId n, double density, std::uint64_t seed,
                                      std::int64_t wmax = 10, std::int64_t fmax = 10) {
  RandomInstanceSpec spec;
  spec.n = n;
  spec.density = density;
  spec.weight_max = wmax;
  spec.cost_max = fmax;
  return gen_random_instance(spec, seed);
}

}  // namespace kmclust::testing
