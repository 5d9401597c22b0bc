#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "kmclust/mis.hpp"
#include "kmclust/oracles.hpp"

using namespace kmclust;
using namespace kmclust::testing;

TEST_CASE("singleton set joins outright") {
  WeightedGraph g = path_graph({1, 1});
  Harness h(g, uniform_costs(3), 2, SsspMode::charged_oracle, Rat{1, 2});
  auto I = approximate_mis(h.ctx, {1}, WideRat(5), 3, {});
  CHECK(I == std::vector<VertexId>{1});
}

TEST_CASE("two vertices closer than the threshold: exactly one joins") {
  WeightedGraph g;
  g.n = 2;
  g.edges = {{0, 1, Rat{1}}};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Harness h(g, uniform_costs(2), 2, SsspMode::charged_oracle, Rat{1, 2}, seed);
    auto I = approximate_mis(h.ctx, {0, 1}, WideRat(3), seed, {});
    CHECK(I.size() == 1);
  }
}

TEST_CASE("far-apart vertices all join") {
  WeightedGraph g = path_graph({10, 10, 10});
  Harness h(g, uniform_costs(4), 2, SsspMode::charged_oracle, Rat{1, 2});
  auto I = approximate_mis(h.ctx, {0, 1, 2, 3}, WideRat(5), 7, {});
  CHECK(I.size() == 4);
}

TEST_CASE("separation and coverage against exact distances") {
  auto inst = random_instance(100, 0.08, 17);
  MetricOracle metric(inst.graph);
  Rng rng(5);
  for (int probe = 0; probe < 12; ++probe) {
    std::vector<VertexId> W;
    for (VertexId v = 0; v < 100; ++v)
      if (rng.coin(0.5)) W.push_back(v);
    if (W.empty()) W.push_back(0);
    WideRat d(static_cast<long>(2 + rng.below(10)));
    Harness h(inst.graph, inst.costs, 4, SsspMode::charged_oracle, Rat{1, 4});
    auto I = approximate_mis(h.ctx, W, d, 100 + probe, {});
    REQUIRE(!I.empty());

    // exact engines: separation beyond d, coverage within d
    for (std::size_t a = 0; a < I.size(); ++a)
      for (std::size_t b = a + 1; b < I.size(); ++b)
        CHECK(to_wide(metric.d(I[a], I[b])) > d);
    for (VertexId w : W) {
      WideRat best(-1);
      for (VertexId i : I) {
        WideRat cand = to_wide(metric.d(w, i));
        if (best < 0 || cand < best) best = cand;
      }
      CHECK(best <= d);
    }
    // members come from W
    for (VertexId i : I) CHECK(std::binary_search(W.begin(), W.end(), i));
  }
}

TEST_CASE("deterministic in the seed, same in both modes") {
  auto inst = random_instance(30, 0.2, 23);
  std::vector<VertexId> W;
  for (VertexId v = 0; v < 30; v += 2) W.push_back(v);
  auto run = [&](SsspMode mode, std::uint64_t seed) {
    Harness h(inst.graph, inst.costs, 3, SsspMode::distributed, Rat{1, 2});
    h.ctx.mode = mode;
    h.ctx.charges.enabled = (mode == SsspMode::charged_oracle);
    return approximate_mis(h.ctx, W, WideRat(4), seed, {});
  };
  auto a = run(SsspMode::charged_oracle, 9);
  auto b = run(SsspMode::charged_oracle, 9);
  auto c = run(SsspMode::distributed, 9);
  CHECK(a == b);
  CHECK(a == c);
  auto d = run(SsspMode::charged_oracle, 10);
  // different seeds usually differ; only check validity, not inequality
  CHECK(!d.empty());
}

TEST_CASE("empty input is rejected") {
  WeightedGraph g = path_graph({1});
  Harness h(g, uniform_costs(2), 2, SsspMode::charged_oracle, Rat{1, 2});
  CHECK_THROWS_AS(approximate_mis(h.ctx, {}, WideRat(1), 1, {}), std::invalid_argument);
}
