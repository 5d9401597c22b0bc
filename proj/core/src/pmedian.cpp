#include "kmclust/pmedian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "kmclust/rng.hpp"

namespace kmclust {

namespace {

struct ProbeResult {
  VertexId open_count;
  FacilitySolution solution;
};

// z = 0 opens every vertex: all radii vanish and nothing blocks anything.
ProbeResult all_open_probe(const EngineContext& ctx) {
  const VertexId n = ctx.n();
  ProbeResult res;
  res.open_count = n;
  res.solution.open.resize(n);
  res.solution.assigned_facility.resize(n);
  res.solution.facility_host.resize(n);
  res.solution.clients_of.assign(n, {});
  for (VertexId v = 0; v < n; ++v) {
    res.solution.open[v] = v;
    res.solution.assigned_facility[v] = v;
    res.solution.facility_host[v] = ctx.part->host_of(v);
  }
  res.solution.opening_cost = Rat{0};
  res.solution.connection_cost = Rat{0};
  return res;
}

}  // namespace

std::string BinarySearchTrace::to_json() const {
  nlohmann::json j;
  auto& ps = j["probes"] = nlohmann::json::array();
  for (const auto& pr : probes)
    ps.push_back({{"z", pr.z}, {"open", pr.open_count}, {"retry", pr.retry}});
  j["exact_hit"] = exact_hit;
  j["bracket_fallback"] = bracket_fallback;
  j["z_A"] = z_A;
  j["z_B"] = z_B;
  j["p1"] = p1;
  j["p2"] = p2;
  j["a"] = prob_a;
  j["b"] = prob_b;
  j["branch"] = branch;
  return j.dump();
}

std::string MedianSolution::to_json() const {
  nlohmann::json j;
  j["C"] = centers;
  j["cost"] = cost.str();
  auto& assignment = j["assignment"] = nlohmann::json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(assigned_center.size()); ++v)
    assignment.push_back({{"client", v},
                          {"center", assigned_center[v]},
                          {"center_host", center_host[v]}});
  j["trace"] = nlohmann::json::parse(trace.to_json());
  return j.dump();
}

std::vector<VertexId> sample_by_machine_quotas(const std::vector<VertexId>& pool,
                                               std::size_t count, const PartitionMap& part,
                                               Cluster& cluster, RoundLedger& ledger,
                                               std::uint64_t seed) {
  if (count > pool.size()) throw std::invalid_argument("sample larger than pool");
  const MachineId k = part.k;
  std::vector<std::vector<VertexId>> local(k);
  for (VertexId v : pool) local[part.host_of(v)].push_back(v);

  // machines report their pool counts to the coordinator
  if (k > 1) {
    for (MachineId m = 1; m < k; ++m)
      cluster.send(m, 0, {Rat{static_cast<std::int64_t>(local[m].size())}});
    cluster.flush(ledger);
  }

  // coordinator assigns quotas: a uniform count-subset of the slot indices
  Rng rng = derive_rng(seed, "quota");
  std::vector<MachineId> slot_machine;
  for (MachineId m = 0; m < k; ++m)
    slot_machine.insert(slot_machine.end(), local[m].size(), m);
  std::vector<std::size_t> quota(k, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + rng.below(slot_machine.size() - i);
    std::swap(slot_machine[i], slot_machine[j]);
    ++quota[slot_machine[i]];
  }
  if (k > 1) {
    for (MachineId m = 1; m < k; ++m)
      cluster.send(0, m, {Rat{static_cast<std::int64_t>(quota[m])}});
    cluster.flush(ledger);
  }

  // each machine picks its quota uniformly from its own pool vertices
  std::vector<VertexId> picked;
  for (MachineId m = 0; m < k; ++m) {
    auto& mine = local[m];
    Rng mrng = derive_rng(seed, "quota.pick", static_cast<std::uint64_t>(m));
    for (std::size_t i = 0; i < quota[m]; ++i) {
      std::size_t j = i + mrng.below(mine.size() - i);
      std::swap(mine[i], mine[j]);
      picked.push_back(mine[i]);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

MedianSolution solve_pmedian(EngineContext& ctx, int p, std::uint64_t seed,
                             const PMedianOptions& opts) {
  const VertexId n = ctx.n();
  if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");

  MedianSolution out;
  if (p == n) {
    out.centers.resize(n);
    out.assigned_center.resize(n);
    out.center_host.resize(n);
    for (VertexId v = 0; v < n; ++v) {
      out.centers[v] = v;
      out.assigned_center[v] = v;
      out.center_host[v] = ctx.part->host_of(v);
    }
    out.cost = Rat{0};
    out.trace.branch = "trivial";
    return out;
  }

  // machines report extreme incident weights to the coordinator
  if (ctx.cluster->k() > 1) {
    for (MachineId m = 1; m < ctx.cluster->k(); ++m)
      ctx.cluster->send(m, 0, {ctx.graph->min_weight(), ctx.graph->max_weight()});
    ctx.cluster->flush(*ctx.ledger);
  }
  const Rat c_min = ctx.graph->min_weight();
  const Rat c_max = Rat{n} * ctx.graph->max_weight();

  // z moves on an integer grid of step c_min / (24 n^2); stopping with the
  // bracket two steps apart keeps z_A - z_B <= c_min / (12 n^2)
  const Rat granularity = c_min / (Rat{24} * Rat{n} * Rat{n});
  std::int64_t hi_j = 1;
  {
    WideRat steps = to_wide(c_max) / to_wide(granularity);
    WideInt units;
    mpz_cdiv_q(units.get_mpz_t(), steps.get_num_mpz_t(), steps.get_den_mpz_t());
    hi_j = units.get_si() + 1;
  }

  // one cost-independent sketch serves every probe
  const std::uint64_t sketch_seed = derive_seed(seed, "pmedian.sketch");
  std::shared_ptr<const NbdSketch> shared_sketch;
  if (ctx.mode == SsspMode::charged_oracle) {
    SketchParams params = SketchParams::make(n, ctx.eps, opts.sketch_c, opts.ell_override);
    long e_min = radius_grid_floor(ctx.eps, opts.beta, granularity);
    long e_max = radius_grid_ceiling(ctx.eps, opts.beta, c_max, n, ctx.graph->max_weight());
    QueryGrid grid = QueryGrid::powers_with_extras(ctx.eps, e_min, e_max);
    RoundLedger build_ledger;  // probes book their own per-run charges
    EngineContext build_ctx = ctx;
    build_ctx.ledger = &build_ledger;
    shared_sketch = std::make_shared<const NbdSketch>(
        NbdSketch::build(build_ctx, params, std::move(grid), sketch_seed));
  }

  auto run_probe = [&](std::int64_t j, int retry) -> ProbeResult {
    Rat z = granularity * Rat{j};
    ProbeResult res;
    if (j == 0) {
      res = all_open_probe(ctx);
    } else {
      FacilityOptions fopts;
      fopts.beta = opts.beta;
      fopts.sketch_c = opts.sketch_c;
      fopts.ell_override = opts.ell_override;
      fopts.mis_c = opts.mis_c;
      fopts.uniform_cost = z;
      fopts.grid_floor = radius_grid_floor(ctx.eps, opts.beta, granularity);
      fopts.grid_ceiling = radius_grid_ceiling(ctx.eps, opts.beta, c_max, n, ctx.graph->max_weight());
      fopts.prebuilt_sketch = shared_sketch;   // null in distributed mode
      fopts.sketch_seed_override = sketch_seed;  // probes share the rank draws
      std::uint64_t probe_seed =
          derive_seed(seed, "pmedian.probe", static_cast<std::uint64_t>(j),
                      static_cast<std::uint64_t>(retry));
      CostVector unused;  // replaced by uniform_cost
      unused.f.assign(n, z);
      FacilityRun run = mettu_plaxton_beta(ctx, unused, probe_seed, fopts);
      res.open_count = static_cast<VertexId>(run.solution.open.size());
      res.solution = std::move(run.solution);
    }
    out.trace.probes.push_back(
        {j, z.str(), res.open_count, retry});
    return res;
  };

  // facility solver knows only the probe seed; reruns with fresh seeds are
  // how a failed bracket endpoint is retried
  auto probe_with_retries = [&](std::int64_t j, bool want_more_than_p) -> ProbeResult {
    ProbeResult res = run_probe(j, 0);
    for (int r = 1; r <= opts.bracket_retries; ++r) {
      bool ok = want_more_than_p ? (res.open_count > p) : (res.open_count < p);
      if (ok || res.open_count == p) return res;
      res = run_probe(j, r);
    }
    return res;
  };

  ProbeResult lo_res = probe_with_retries(0, true);  // z = 0: |S| = n > p
  if (lo_res.open_count == p) {
    out.trace.exact_hit = true;
  }
  ProbeResult hi_res{};
  std::int64_t lo_j = 0;
  bool have_exact = lo_res.open_count == p;
  ProbeResult exact_res = have_exact ? lo_res : ProbeResult{};
  if (!have_exact) {
    hi_res = probe_with_retries(hi_j, false);
    if (hi_res.open_count == p) {
      have_exact = true;
      exact_res = hi_res;
    }
  }

  if (!have_exact && (lo_res.open_count < p || hi_res.open_count > p)) {
    // endpoints refused to bracket even after retries: pad the larger
    // solution down/up deterministically and flag the run
    out.trace.bracket_fallback = true;
    ProbeResult base = lo_res.open_count >= p ? lo_res : hi_res;
    std::set<VertexId> centers(base.solution.open.begin(), base.solution.open.end());
    for (VertexId v = 0; v < n && static_cast<int>(centers.size()) < p; ++v) centers.insert(v);
    while (static_cast<int>(centers.size()) > p) centers.erase(std::prev(centers.end()));
    exact_res.solution.open.assign(centers.begin(), centers.end());
    have_exact = true;  // assembled below through the common path
  }

  while (!have_exact && hi_j - lo_j > 2) {
    std::int64_t mid = lo_j + (hi_j - lo_j) / 2;
    ProbeResult res = run_probe(mid, 0);
    if (res.open_count == p) {
      have_exact = true;
      exact_res = res;
      break;
    }
    if (res.open_count > p) {
      lo_j = mid;
      lo_res = res;
    } else {
      hi_j = mid;
      hi_res = res;
    }
  }

  std::vector<VertexId> chosen;
  if (have_exact && !out.trace.bracket_fallback &&
      !exact_res.solution.open.empty()) {
    out.trace.exact_hit = true;
    out.trace.branch = "exact";
    chosen = exact_res.solution.open;
  } else if (out.trace.bracket_fallback) {
    out.trace.branch = "fallback";
    chosen = exact_res.solution.open;
  } else {
    const std::vector<VertexId>& A = hi_res.solution.open;  // fewer than p
    const std::vector<VertexId>& B = lo_res.solution.open;  // more than p
    const VertexId p1 = static_cast<VertexId>(A.size());
    const VertexId p2 = static_cast<VertexId>(B.size());
    out.trace.p1 = p1;
    out.trace.p2 = p2;
    out.trace.z_A = (granularity * Rat{hi_j}).str();
    out.trace.z_B = (granularity * Rat{lo_j}).str();
    Rat prob_a{p2 - p, p2 - p1};
    Rat prob_b{p - p1, p2 - p1};
    out.trace.prob_a = prob_a.str();
    out.trace.prob_b = prob_b.str();

    // B': the closest vertex of B per vertex of A, padded to p1 from B
    SourceSet b_set = SourceSet::of(n, B);
    DistanceTable near_b = mssp(ctx, b_set, "pmedian.bprime");
    std::set<VertexId> bprime;
    for (VertexId a : A) bprime.insert(b_set.contains(a) ? a : near_b.at[a].source);
    for (VertexId b : B) {
      if (static_cast<VertexId>(bprime.size()) >= p1) break;
      bprime.insert(b);
    }

    // coordinator flips the coin and announces the branch
    Rng coin = derive_rng(seed, "pmedian.coin");
    bool take_a = coin.unit() < prob_a.to_double();
    if (ctx.cluster->k() > 1) {
      ctx.cluster->broadcast_all(0, {Rat{take_a ? 1 : 0}});
      ctx.cluster->flush(*ctx.ledger);
    }
    out.trace.branch = take_a ? "A" : "Bprime";
    std::set<VertexId> chosen_set =
        take_a ? std::set<VertexId>(A.begin(), A.end()) : bprime;

    // p - p1 extra centers sampled uniformly from B \ B'
    std::vector<VertexId> pool;
    for (VertexId b : B)
      if (!bprime.count(b)) pool.push_back(b);
    std::vector<VertexId> extra =
        sample_by_machine_quotas(pool, static_cast<std::size_t>(p - p1), *ctx.part,
                                 *ctx.cluster, *ctx.ledger, derive_seed(seed, "pmedian.sample"));
    for (VertexId v : extra) chosen_set.insert(v);
    chosen.assign(chosen_set.begin(), chosen_set.end());
  }

  if (static_cast<int>(chosen.size()) != p)
    throw std::logic_error("p-median rounding produced " + std::to_string(chosen.size()) +
                           " centers instead of " + std::to_string(p));

  DistanceTable assign = mssp(ctx, SourceSet::of(n, chosen), "pmedian.assign");
  out.centers = chosen;
  out.assigned_center.resize(n);
  out.center_host.resize(n);
  out.cost = Rat{0};
  for (VertexId v = 0; v < n; ++v) {
    out.assigned_center[v] = assign.at[v].source;
    out.center_host[v] = assign.at[v].source_host;
    out.cost += assign.at[v].dist;
  }
  return out;
}

}  // namespace kmclust
