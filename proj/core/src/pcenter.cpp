#include "kmclust/pcenter.hpp"

#include <stdexcept>

#include "json.hpp"
#include "kmclust/rng.hpp"

namespace kmclust {

std::string CenterSolution::to_json() const {
  nlohmann::json j;
  j["C"] = centers;
  j["radius"] = radius.str();
  j["d_probe_expo"] = d_probe_expo;
  j["trivial"] = trivial;
  j["d_probe"] = wide_str(pow_ratio(1 + to_wide(radius_eps), d_probe_expo));
  auto& ps = j["probes"] = nlohmann::json::array();
  for (const auto& pr : probes)
    ps.push_back({{"expo", pr.expo},
                  {"d", wide_str(pow_ratio(1 + to_wide(radius_eps), pr.expo))},
                  {"mis_size", pr.mis_size}});
  auto& assignment = j["assignment"] = nlohmann::json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(assigned_center.size()); ++v)
    assignment.push_back({{"client", v},
                          {"center", assigned_center[v]},
                          {"center_host", center_host[v]}});
  return j.dump();
}

CenterSolution solve_pcenter(EngineContext& ctx, int p, std::uint64_t seed,
                             const PCenterOptions& opts) {
  const VertexId n = ctx.n();
  if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");

  CenterSolution out;
  out.radius_eps = ctx.eps;
  if (p == n) {
    out.trivial = true;
    out.centers.resize(n);
    out.assigned_center.resize(n);
    out.center_host.resize(n);
    for (VertexId v = 0; v < n; ++v) {
      out.centers[v] = v;
      out.assigned_center[v] = v;
      out.center_host[v] = ctx.part->host_of(v);
    }
    out.radius = Rat{0};
    return out;
  }

  std::vector<VertexId> everyone(n);
  for (VertexId v = 0; v < n; ++v) everyone[v] = v;

  const WideRat base = 1 + to_wide(ctx.eps);
  const long e_top =
      ceil_log(base, WideRat(static_cast<long>(n)) * to_wide(max(ctx.graph->max_weight(), Rat{1})));

  // probes ascend the discrete levels; MIS size only shrinks with d, so the
  // first feasible probe is the smallest one
  for (long e = 0; e <= e_top; ++e) {
    WideRat mis_distance = 2 * pow_ratio(base, e + 1);
    std::vector<VertexId> I = approximate_mis(ctx, everyone, mis_distance,
                                              derive_seed(seed, "pcenter.probe",
                                                          static_cast<std::uint64_t>(e)),
                                              MisOptions{opts.mis_c});
    out.probes.push_back({e, I.size()});
    if (static_cast<int>(I.size()) <= p) {
      out.d_probe_expo = e;
      DistanceTable assign = mssp(ctx, SourceSet::of(n, I), "pcenter.assign");
      out.centers = I;
      out.assigned_center.resize(n);
      out.center_host.resize(n);
      out.radius = Rat{0};
      for (VertexId v = 0; v < n; ++v) {
        out.assigned_center[v] = assign.at[v].source;
        out.center_host[v] = assign.at[v].source_host;
        out.radius = max(out.radius, assign.at[v].dist);
      }
      return out;
    }
  }
  throw std::logic_error("no feasible probe found; top probe should always cover the graph");
}

}  // namespace kmclust
