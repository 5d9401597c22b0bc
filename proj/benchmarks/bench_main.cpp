#include <benchmark/benchmark.h>

#include "kmclust/dist_engine.hpp"
#include "kmclust/facility.hpp"
#include "kmclust/generators.hpp"
#include "kmclust/nbd_sketch.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/partition.hpp"

using namespace kmclust;

namespace {

struct Fixture {
  WeightedGraph graph;
  CostVector costs;
  Adjacency adj;
  PartitionMap part;

  explicit Fixture(VertexId n, double avg_degree = 12.0)
      : graph(), costs(), adj(make_graph(n, avg_degree)), part(random_partition(n, 8, 7)) {}

  WeightedGraph make_graph(VertexId n, double avg_degree) {
    RandomInstanceSpec spec;
    spec.n = n;
    spec.density = std::min(1.0, avg_degree / std::max(1, n - 1));
    RandomInstance inst = gen_random_instance(spec, 99);
    auto norm = normalize_weights(inst.graph, inst.costs);
    graph = norm.graph;
    costs = norm.costs;
    return graph;
  }
};

void BM_dijkstra(benchmark::State& state) {
  Fixture fx(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) {
    auto dist = dijkstra_exact(fx.adj, 0);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(BM_dijkstra)->Arg(1 << 10)->Arg(1 << 12)->Arg(1 << 14);

void BM_mssp_oracle(benchmark::State& state) {
  Fixture fx(static_cast<VertexId>(state.range(0)));
  std::vector<VertexId> sources;
  for (VertexId v = 0; v < fx.graph.n; v += 37) sources.push_back(v);
  SourceSet T = SourceSet::of(fx.graph.n, sources);
  for (auto _ : state) {
    Cluster cluster(8);
    RoundLedger ledger;
    EngineContext ctx = make_context(fx.graph, fx.adj, fx.part, SsspMode::charged_oracle,
                                     Rat{1}, cluster, ledger);
    auto table = mssp(ctx, T, "bench");
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_mssp_oracle)->Arg(1 << 10)->Arg(1 << 12);

void BM_sketch_build(benchmark::State& state) {
  Fixture fx(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) {
    Cluster cluster(8);
    RoundLedger ledger;
    EngineContext ctx = make_context(fx.graph, fx.adj, fx.part, SsspMode::charged_oracle,
                                     Rat{1}, cluster, ledger);
    SketchParams params = SketchParams::make(fx.graph.n, Rat{1}, 4);
    QueryGrid grid = QueryGrid::powers_with_extras(
        Rat{1}, radius_grid_floor(Rat{1}, Rat{1}, fx.costs.min_cost()),
        radius_grid_ceiling(Rat{1}, Rat{1}, fx.costs.max_cost(), fx.graph.n,
                            fx.graph.max_weight()));
    NbdSketch sk = NbdSketch::build(ctx, params, std::move(grid), 5);
    benchmark::DoNotOptimize(sk);
  }
}
BENCHMARK(BM_sketch_build)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);

void BM_facility_end_to_end(benchmark::State& state) {
  Fixture fx(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) {
    Cluster cluster(8);
    RoundLedger ledger;
    EngineContext ctx = make_context(fx.graph, fx.adj, fx.part, SsspMode::charged_oracle,
                                     Rat{1}, cluster, ledger);
    FacilityRun run = mettu_plaxton_beta(ctx, fx.costs, 3, {});
    benchmark::DoNotOptimize(run);
  }
}
BENCHMARK(BM_facility_end_to_end)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
