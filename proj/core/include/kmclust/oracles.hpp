#pragma once

#include <optional>
#include <vector>

#include "kmclust/graph.hpp"

namespace kmclust {

struct FacilityAssignment {
  std::vector<VertexId> open;              // ascending
  std::vector<VertexId> facility_of;       // per vertex; facilities map to themselves
  Rat opening_cost;
  Rat connection_cost;
  Rat total() const { return opening_cost + connection_cost; }
};

// Exact single-source shortest-path distances (binary-heap Dijkstra).
std::vector<Rat> dijkstra_exact(const Adjacency& adj, VertexId source);
std::vector<Rat> dijkstra_exact(const WeightedGraph& g, VertexId source);

// Cached all-pairs exact distances for verification work; refuses above cap.
// Cap default 2000, overridable via the KMCLUST_ORACLE_CAP environment variable.
class MetricOracle {
 public:
  explicit MetricOracle(const WeightedGraph& g, std::optional<VertexId> cap = std::nullopt);

  VertexId n() const { return n_; }
  const Rat& d(VertexId i, VertexId j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  Rat nearest_in(VertexId v, const std::vector<VertexId>& set) const;

  static VertexId default_cap();

 private:
  VertexId n_;
  std::vector<Rat> dist_;
};

// Exact Mettu-Plaxton radius: the r solving beta*f_v = sum_{u in B(v,r)} (r - d(v,u)),
// found by walking the piecewise-linear alpha(v, r) breakpoint by breakpoint.
std::vector<Rat> exact_radii(const MetricOracle& metric, const CostVector& costs, const Rat& beta);
Rat exact_radius_of(const std::vector<Rat>& dists_from_v, const Rat& beta_cost);

// Sequential greedy baseline: vertices in non-decreasing radius order (ties by
// id); open v when d(v, S) > 2 r_v; clients connect to the nearest open site.
FacilityAssignment sequential_mp(const MetricOracle& metric, const CostVector& costs,
                                 const Rat& beta);

// Exhaustive optima for tiny instances.
struct BruteForceResult {
  Rat cost;
  std::vector<VertexId> witness;
};
BruteForceResult brute_force_facloc(const MetricOracle& metric, const CostVector& costs);
BruteForceResult brute_force_pmedian(const MetricOracle& metric, int p);
BruteForceResult brute_force_pcenter(const MetricOracle& metric, int p);

}  // namespace kmclust
