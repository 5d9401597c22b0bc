#include "doctest.h"
#include "helpers.hpp"
#include "kmclust/certificate.hpp"
#include "kmclust/facility.hpp"

using namespace kmclust;
using namespace kmclust::testing;

TEST_CASE("single vertex: w_vv = r/beta and v = w_vv") {
  WeightedGraph g;
  g.n = 1;
  MetricOracle metric(g);
  CostVector costs = uniform_costs(1, Rat{5});
  RadiusTable radii;
  radii.eps = Rat{1, 2};
  radii.expo = {2};  // r~ = 2.25
  DualCertificate cert = build_dual_certificate(metric, radii, costs, Rat{3, 2}, {0});
  WideRat expected_w = WideRat(9, 4) / WideRat(3, 2);
  REQUIRE(cert.contributions[0].size() == 1);
  CHECK(cert.contributions[0][0].second == expected_w);
  CHECK(cert.v[0] == expected_w);  // d(0,0) = 0
  CHECK(cert.s[0] == expected_w);
}

TEST_CASE("two vertices: hand-evaluated dual values") {
  WeightedGraph g;
  g.n = 2;
  g.edges = {{0, 1, Rat{2}}};
  MetricOracle metric(g);
  CostVector costs = uniform_costs(2, Rat{3});
  RadiusTable radii;
  radii.eps = Rat{1, 2};
  radii.expo = {2, 2};  // r~ = 2.25 for both (exact r = 2.5)
  DualCertificate cert = build_dual_certificate(metric, radii, costs, Rat{1}, {0});

  // d_up(0,1) = 2 rounded up to 2.25; w_01 = max(0, 2.25 - 2.25) = 0
  // w_00 = 2.25; v_0 = min(0 + 2.25, 2 + 0) = 2
  CHECK(cert.v[0] == WideRat(2));
  CHECK(cert.v[1] == WideRat(2));
  CHECK(cert.s[0] == WideRat(9, 4));
  CHECK(cert.s[1] == WideRat(0));  // vertex 1 contributes only to itself, which is closed
  CHECK(cert.sigma == WideRat(1));  // sum_j w_0j = 2.25 <= f_0 = 3
}

TEST_CASE("verification passes on a single-vertex instance") {
  WeightedGraph g;
  g.n = 1;
  MetricOracle metric(g);
  CostVector costs = uniform_costs(1, Rat{5});
  Harness h(g, costs, 1, SsspMode::charged_oracle, Rat{1, 2});
  FacilityOptions o;
  o.sketch_c = 2;
  FacilityRun run = mettu_plaxton_beta(h.ctx, costs, 1, o);
  DualCertificate cert =
      build_dual_certificate(metric, run.radii, costs, Rat{1}, run.solution.open);
  CertReport report = verify_certificate(metric, costs, run.solution, cert, Rat{1, 2});
  CHECK(report.ok);
  CHECK(report.violating_clients.empty());
}

TEST_CASE("a corrupted solution trips the verifier") {
  auto inst = random_instance(12, 0.4, 3);
  const Rat eps{1, 4};
  Harness h(inst.graph, inst.costs, 3, SsspMode::charged_oracle, eps);
  FacilityOptions o;
  o.sketch_c = 2;
  FacilityRun run = mettu_plaxton_beta(h.ctx, inst.costs, 2, o);
  MetricOracle metric(inst.graph);
  DualCertificate cert =
      build_dual_certificate(metric, run.radii, inst.costs, o.beta, run.solution.open);

  FacilitySolution bad = run.solution;
  bad.connection_cost = bad.connection_cost + Rat{100000};  // inflated beyond any slack
  CertReport report = verify_certificate(metric, inst.costs, bad, cert, eps);
  CHECK_FALSE(report.ok);
  bool aggregate_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "aggregate" && !c.ok) aggregate_failed = true;
  CHECK(aggregate_failed);
}

TEST_CASE("scaled dual total lower-bounds the brute-force optimum") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = random_instance(10, 0.4, seed);
    const Rat eps{1, 10};
    const Rat beta{3, 2};
    Harness h(inst.graph, inst.costs, 3, SsspMode::charged_oracle, eps, seed);
    FacilityOptions o;
    o.beta = beta;
    o.sketch_c = 2;
    FacilityRun run = mettu_plaxton_beta(h.ctx, inst.costs, seed, o);
    MetricOracle metric(inst.graph);
    DualCertificate cert =
        build_dual_certificate(metric, run.radii, inst.costs, beta, run.solution.open);
    auto opt = brute_force_facloc(metric, inst.costs);
    CHECK(cert.scaled_dual_total() <= to_wide(opt.cost));
  }
}

TEST_CASE("certificate json exposes the dual values") {
  WeightedGraph g;
  g.n = 2;
  g.edges = {{0, 1, Rat{2}}};
  MetricOracle metric(g);
  CostVector costs = uniform_costs(2, Rat{3});
  RadiusTable radii;
  radii.eps = Rat{1, 2};
  radii.expo = {2, 2};
  DualCertificate cert = build_dual_certificate(metric, radii, costs, Rat{1}, {0});
  std::string j = cert.to_json();
  CHECK(j.find("\"sigma\"") != std::string::npos);
  CHECK(j.find("\"v\"") != std::string::npos);
  CHECK(j.find("\"w\"") != std::string::npos);
}
