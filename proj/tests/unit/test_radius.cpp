#include "doctest.h"
#include "helpers.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/radius.hpp"

using namespace kmclust;
using namespace kmclust::testing;

namespace {

RadiusTable radii_for(Harness& h, const Rat& eps, const Rat& beta, std::uint64_t seed,
                      int c = 2, std::optional<std::int64_t> ell = std::nullopt) {
  SketchParams params = SketchParams::make(h.graph.n, eps, c, ell);
  long e_min = radius_grid_floor(eps, beta, h.costs.min_cost());
  long e_max = radius_grid_ceiling(eps, beta, h.costs.max_cost(), h.graph.n,
                                   h.graph.max_weight());
  QueryGrid grid = QueryGrid::powers_with_extras(eps, e_min, e_max);
  NbdSketch sk = NbdSketch::build(h.ctx, params, std::move(grid), seed);
  return compute_radii(sk, h.costs, beta);
}

bool sandwiched(const RadiusTable& table, VertexId v, const Rat& exact, int powers = 3) {
  WideRat slack = pow_ratio(1 + to_wide(table.eps), powers);
  WideRat approx = table.value(v);
  WideRat truth = to_wide(exact);
  return approx <= slack * truth && truth <= slack * approx;
}

}  // namespace

namespace {

// vertices 0 (and 1) with controlled surroundings, padded by a unit path far
// enough away that it never enters their balls; rank estimation needs a
// reasonable n to concentrate
WeightedGraph padded_pair(const Rat& pair_weight, VertexId n = 24) {
  WeightedGraph g;
  g.n = n;
  g.edges.push_back({0, 1, pair_weight});
  g.edges.push_back({1, 2, Rat{200}});
  for (VertexId v = 2; v + 1 < n; ++v) g.edges.push_back({v, static_cast<VertexId>(v + 1), Rat{1}});
  return g;
}

}  // namespace

TEST_CASE("isolated-style vertex: radius tracks beta f") {
  // every edge at vertex 0 is heavier than f_0, so alpha(0, r) = r up there
  WeightedGraph g = padded_pair(Rat{50});
  CostVector costs = uniform_costs(g.n, Rat{5});
  Harness h(g, costs, 2, SsspMode::charged_oracle, Rat{1, 10});
  RadiusTable t = radii_for(h, Rat{1, 10}, Rat{1}, 4);
  MetricOracle metric(g);
  auto exact = exact_radii(metric, costs, Rat{1});
  CHECK(exact[0] == Rat{5});
  CHECK(sandwiched(t, 0, exact[0]));
  CHECK(sandwiched(t, 1, exact[1]));
}

TEST_CASE("two vertices at distance 2: both beta values") {
  WeightedGraph g = padded_pair(Rat{2});
  CostVector costs = uniform_costs(g.n, Rat{3});
  MetricOracle metric(g);
  for (Rat beta : {Rat{1}, Rat{3, 2}}) {
    Harness h(g, costs, 2, SsspMode::charged_oracle, Rat{1, 10});
    RadiusTable t = radii_for(h, Rat{1, 10}, beta, 7);
    auto exact = exact_radii(metric, costs, beta);
    CHECK(exact[0] == (beta == Rat{1} ? Rat{5, 2} : Rat{13, 4}));
    CHECK(sandwiched(t, 0, exact[0]));
    CHECK(sandwiched(t, 1, exact[1]));
  }
}

TEST_CASE("sandwich holds across random instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = random_instance(30, 0.2, seed);
    const Rat eps{1, 10};
    Harness h(inst.graph, inst.costs, 4, SsspMode::charged_oracle, eps);
    RadiusTable t = radii_for(h, eps, Rat{1}, seed * 31);
    MetricOracle metric(inst.graph);
    auto exact = exact_radii(metric, inst.costs, Rat{1});
    for (VertexId v = 0; v < 30; ++v) CHECK(sandwiched(t, v, exact[v]));
  }
}

TEST_CASE("cost-floor vertices keep the sandwich") {
  // f = 1 with the nearest neighbor a few hops out sits right at the
  // normalization floor where the level sum is most delicate
  WeightedGraph g;
  g.n = 3;
  g.edges = {{0, 1, Rat{3}}, {1, 2, Rat{1}}};
  CostVector costs;
  costs.f = {Rat{1}, Rat{4}, Rat{9}};
  Harness h(g, costs, 2, SsspMode::charged_oracle, Rat{1, 10});
  RadiusTable t = radii_for(h, Rat{1, 10}, Rat{1}, 12, 4);
  MetricOracle metric(g);
  auto exact = exact_radii(metric, costs, Rat{1});
  CHECK(exact[0] == Rat{1});
  for (VertexId v = 0; v < 3; ++v) CHECK(sandwiched(t, v, exact[v]));
}

TEST_CASE("uniform sub-unit costs still satisfy the sandwich") {
  // the p-median search probes opening costs far below 1
  auto inst = random_instance(20, 0.3, 9);
  const Rat eps{1, 4};
  const Rat z{1, 150};
  CostVector costs = uniform_costs(20, z);
  Harness h(inst.graph, costs, 3, SsspMode::charged_oracle, eps);
  RadiusTable t = radii_for(h, eps, Rat{3, 2}, 5, 4);
  MetricOracle metric(inst.graph);
  auto exact = exact_radii(metric, costs, Rat{3, 2});
  for (VertexId v = 0; v < 20; ++v) {
    CHECK(t.expo[v] < 0);  // radii below 1
    CHECK(sandwiched(t, v, exact[v]));
  }
}

TEST_CASE("radius exponents stay inside the query grid") {
  auto inst = random_instance(25, 0.25, 3);
  const Rat eps{1, 2};
  Harness h(inst.graph, inst.costs, 2, SsspMode::charged_oracle, eps);
  long e_min = radius_grid_floor(eps, Rat{1}, inst.costs.min_cost());
  long e_max = radius_grid_ceiling(eps, Rat{1}, inst.costs.max_cost(), 25,
                                   inst.graph.max_weight());
  RadiusTable t = radii_for(h, eps, Rat{1}, 8);
  for (VertexId v = 0; v < 25; ++v) {
    CHECK(t.expo[v] >= e_min);
    CHECK(t.expo[v] <= e_max);
  }
}
