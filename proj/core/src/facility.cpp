#include "kmclust/facility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "kmclust/rng.hpp"

namespace kmclust {

std::string FacilitySolution::to_json() const {
  nlohmann::json j;
  j["S"] = open;
  auto& assignment = j["assignment"] = nlohmann::json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(assigned_facility.size()); ++v) {
    if (is_open(v)) continue;
    assignment.push_back({{"client", v},
                          {"facility", assigned_facility[v]},
                          {"facility_host", facility_host[v]}});
  }
  j["F"] = opening_cost.str();
  j["C"] = connection_cost.str();
  return j.dump();
}

FacilityRun mettu_plaxton_beta(EngineContext& ctx, const CostVector& costs_in, std::uint64_t seed,
                               const FacilityOptions& opts) {
  if (opts.beta < Rat{1} || opts.beta > Rat{3, 2})
    throw std::invalid_argument("beta must lie in [1, 3/2]");
  const VertexId n = ctx.n();

  CostVector costs = costs_in;
  if (opts.uniform_cost) costs.f.assign(n, *opts.uniform_cost);
  if (static_cast<VertexId>(costs.f.size()) != n)
    throw std::invalid_argument("cost vector length must equal vertex count");
  for (const auto& f : costs.f)
    if (!f.is_positive()) throw std::invalid_argument("opening costs must be positive");

  FacilityRun run;

  // Phase 1: neighborhood sketch + radii
  if (opts.prebuilt_sketch) {
    run.sketch = opts.prebuilt_sketch;
    // the meter reflects a per-run rebuild even when the (cost-independent)
    // structure is shared across probes
    charge(*ctx.ledger, ctx.charges, "sketch", n, ctx.part->k, ctx.eps,
           run.sketch->mssp_calls());
  } else {
    SketchParams params = SketchParams::make(n, ctx.eps, opts.sketch_c, opts.ell_override);
    long e_min = opts.grid_floor.value_or(radius_grid_floor(ctx.eps, opts.beta, costs.min_cost()));
    long e_max = opts.grid_ceiling.value_or(
        radius_grid_ceiling(ctx.eps, opts.beta, costs.max_cost(), n, ctx.graph->max_weight()));
    QueryGrid grid =
        QueryGrid::powers_with_extras(ctx.eps, e_min, e_max, opts.extra_query_distances);
    std::uint64_t sketch_seed = opts.sketch_seed_override.value_or(derive_seed(seed, "sketch"));
    run.sketch = std::make_shared<const NbdSketch>(
        NbdSketch::build(ctx, params, std::move(grid), sketch_seed));
  }
  run.radii = compute_radii(*run.sketch, costs, opts.beta);

  // Phase 2: ascending radius classes
  std::map<long, std::vector<VertexId>> classes;
  for (VertexId v = 0; v < n; ++v) classes[run.radii.expo[v]].push_back(v);

  const WideRat base = 1 + to_wide(ctx.eps);
  std::vector<VertexId> open;
  for (const auto& [expo, members] : classes) {
    std::vector<VertexId> W = members;
    if (!open.empty()) {
      // drop members already served by an opened facility
      WideRat drop_radius = 2 * pow_ratio(base, expo + 2);
      DistanceTable near = mssp(ctx, SourceSet::of(n, open), "greedy.remove");
      std::vector<VertexId> keep;
      keep.reserve(W.size());
      for (VertexId v : W)
        if (to_wide(near.at[v].dist) > drop_radius) keep.push_back(v);
      W = std::move(keep);
    }
    if (W.empty()) continue;
    WideRat mis_distance = 2 * pow_ratio(base, expo + 3);
    std::vector<VertexId> I =
        approximate_mis(ctx, W, mis_distance, derive_seed(seed, "mis", static_cast<std::uint64_t>(expo + (1L << 20))),
                        MisOptions{opts.mis_c});
    open.insert(open.end(), I.begin(), I.end());
    std::sort(open.begin(), open.end());
  }

  // final assignment; the table exchange hands every machine the pairs the
  // output contract asks for
  DistanceTable assign = mssp(ctx, SourceSet::of(n, open), "assign");
  FacilitySolution& sol = run.solution;
  sol.open = open;
  sol.assigned_facility.resize(n);
  sol.facility_host.resize(n);
  sol.vertex_host.resize(n);
  for (VertexId v = 0; v < n; ++v) sol.vertex_host[v] = ctx.part->host_of(v);
  sol.clients_of.assign(open.size(), {});
  std::map<VertexId, std::size_t> open_index;
  for (std::size_t i = 0; i < open.size(); ++i) open_index[open[i]] = i;
  sol.opening_cost = Rat{0};
  sol.connection_cost = Rat{0};
  for (VertexId s : open) sol.opening_cost += costs.f[s];
  for (VertexId v = 0; v < n; ++v) {
    sol.assigned_facility[v] = assign.at[v].source;
    sol.facility_host[v] = assign.at[v].source_host;
    if (!sol.is_open(v)) {
      sol.connection_cost += assign.at[v].dist;
      sol.clients_of[open_index[assign.at[v].source]].push_back(v);
    }
  }
  return run;
}

}  // namespace kmclust
