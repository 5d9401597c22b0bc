#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/pmedian.hpp"

using namespace kmclust;
using namespace kmclust::testing;

namespace {

PMedianOptions fast_opts() {
  PMedianOptions o;
  o.sketch_c = 2;
  return o;
}

}  // namespace

TEST_CASE("p equal to n opens everything at zero cost") {
  auto inst = random_instance(9, 0.4, 2);
  Harness h(inst.graph, inst.costs, 3, SsspMode::charged_oracle, Rat{1, 2});
  MedianSolution sol = solve_pmedian(h.ctx, 9, 4, fast_opts());
  CHECK(sol.centers.size() == 9);
  CHECK(sol.cost == Rat{0});
  CHECK(sol.trace.branch == "trivial");
}

TEST_CASE("single center on a unit star lands near the optimum") {
  WeightedGraph g = star_graph(7);
  CostVector costs = uniform_costs(8);
  MetricOracle metric(g);
  auto opt = brute_force_pmedian(metric, 1);
  CHECK(opt.cost == Rat{7});  // hub serves every leaf at distance 1
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Harness h(g, costs, 3, SsspMode::charged_oracle, Rat{1, 2}, seed);
    MedianSolution sol = solve_pmedian(h.ctx, 1, seed, fast_opts());
    REQUIRE(sol.centers.size() == 1);
    // 6.5 covers 6 + eps with headroom for the expectation guarantee
    CHECK(to_wide(sol.cost) <= WideRat(13, 2) * to_wide(opt.cost));
  }
}

TEST_CASE("mean ratio on tiny instances stays within the guarantee") {
  auto inst = random_instance(10, 0.35, 7);
  MetricOracle metric(inst.graph);
  for (int p : {2, 3}) {
    auto opt = brute_force_pmedian(metric, p);
    double sum_ratio = 0;
    const int seeds = 30;
    for (int s = 1; s <= seeds; ++s) {
      Harness h(inst.graph, inst.costs, 3, SsspMode::charged_oracle, Rat{1, 2}, s);
      MedianSolution sol = solve_pmedian(h.ctx, p, s, fast_opts());
      CHECK(static_cast<int>(sol.centers.size()) == p);
      sum_ratio += WideRat(to_wide(sol.cost) / to_wide(opt.cost)).get_d();
    }
    CHECK(sum_ratio / seeds <= 6.0 + 0.5 + 0.5);
  }
}

TEST_CASE("quota sampling includes every pool vertex with probability count/pool") {
  PartitionMap part = random_partition(20, 4, 3);
  std::vector<VertexId> pool{1, 3, 4, 7, 9, 12, 15, 16, 18, 19};
  std::vector<int> hits(20, 0);
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    Cluster cluster(4);
    RoundLedger ledger;
    auto picked = sample_by_machine_quotas(pool, 4, part, cluster, ledger, 1000 + t);
    CHECK(picked.size() == 4);
    for (VertexId v : picked) ++hits[v];
  }
  for (VertexId v : pool) {
    double freq = static_cast<double>(hits[v]) / trials;
    CHECK(std::abs(freq - 0.4) < 0.04);  // ~5 sigma for 4000 trials
  }
}

TEST_CASE("binary search terminates with a valid bracket or exact hit") {
  auto inst = random_instance(12, 0.3, 13);
  Harness h(inst.graph, inst.costs, 3, SsspMode::charged_oracle, Rat{1, 2});
  MedianSolution sol = solve_pmedian(h.ctx, 3, 5, fast_opts());
  CHECK(sol.centers.size() == 3);
  const auto& tr = sol.trace;
  if (!tr.exact_hit && !tr.bracket_fallback) {
    CHECK(tr.p1 < 3);
    CHECK(tr.p2 > 3);
    // z_A - z_B <= c_min / (12 n^2)
    Rat z_a = Rat::parse(tr.z_A);
    Rat z_b = Rat::parse(tr.z_B);
    Rat bound = inst.graph.min_weight() / (Rat{12} * Rat{12 * 12});
    CHECK(z_a - z_b <= bound);
    CHECK((tr.branch == "A" || tr.branch == "Bprime"));
    CHECK(Rat::parse(tr.prob_a) + Rat::parse(tr.prob_b) == Rat{1});
  }
  // probe budget: bisection plus endpoints and retries
  WideRat range = to_wide(Rat{12} * inst.graph.max_weight() * Rat{12} * Rat{12 * 12} * Rat{12}) /
                  to_wide(inst.graph.min_weight());
  long bound_probes = ceil_log(WideRat(2), range) + 1;
  CHECK(static_cast<long>(tr.probes.size()) <= bound_probes + 2 + 3);
}

TEST_CASE("runs are deterministic and mode-independent") {
  auto inst = random_instance(12, 0.35, 40);
  auto run_with = [&](SsspMode mode) {
    Harness h(inst.graph, inst.costs, 3, mode, Rat{1, 2}, 6);
    MedianSolution sol = solve_pmedian(h.ctx, 3, 11, fast_opts());
    return sol.to_json();
  };
  std::string charged = run_with(SsspMode::charged_oracle);
  CHECK(charged == run_with(SsspMode::charged_oracle));
  CHECK(charged == run_with(SsspMode::distributed));
}

TEST_CASE("every client is assigned to its nearest chosen center") {
  auto inst = random_instance(14, 0.3, 21);
  MetricOracle metric(inst.graph);
  Harness h(inst.graph, inst.costs, 4, SsspMode::charged_oracle, Rat{1, 2});
  MedianSolution sol = solve_pmedian(h.ctx, 4, 9, fast_opts());
  for (VertexId v = 0; v < 14; ++v) {
    CHECK(metric.d(v, sol.assigned_center[v]) == metric.nearest_in(v, sol.centers));
    CHECK(sol.center_host[v] == h.part.host_of(sol.assigned_center[v]));
  }
}

TEST_CASE("out-of-range p rejected") {
  auto inst = random_instance(6, 0.5, 2);
  Harness h(inst.graph, inst.costs, 2, SsspMode::charged_oracle, Rat{1, 2});
  CHECK_THROWS_AS(solve_pmedian(h.ctx, 0, 1, fast_opts()), std::invalid_argument);
  CHECK_THROWS_AS(solve_pmedian(h.ctx, 7, 1, fast_opts()), std::invalid_argument);
}
