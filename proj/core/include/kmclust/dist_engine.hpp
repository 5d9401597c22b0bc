#pragma once

#include <string>
#include <vector>

#include "kmclust/graph.hpp"
#include "kmclust/partition.hpp"
#include "kmclust/runtime.hpp"

namespace kmclust {

enum class SsspMode { distributed, charged_oracle };

SsspMode parse_sssp_mode(const std::string& text);
std::string sssp_mode_name(SsspMode mode);

// Source set; every machine knows the members it hosts (here: a global
// bitmap plus the sorted member list the simulator maintains).
struct SourceSet {
  std::vector<VertexId> members;  // ascending
  std::vector<char> mask;         // size n

  static SourceSet of(VertexId n, std::vector<VertexId> members);
  bool contains(VertexId v) const { return mask[v] != 0; }
  std::size_t size() const { return members.size(); }
};

struct NearestEntry {
  Rat dist;
  VertexId source = -1;      // -1: entry not defined (exclusive table, v outside T)
  MachineId source_host = -1;
};

// Per-vertex nearest-source answers. Both engines are exact, so dist is the
// true d(v, T) and `source` is the smallest id realizing it.
struct DistanceTable {
  std::vector<NearestEntry> at;
};

// Everything an engine call needs; `cluster`/`ledger` meter the run.
struct EngineContext {
  const WeightedGraph* graph = nullptr;
  const Adjacency* adj = nullptr;
  const PartitionMap* part = nullptr;
  SsspMode mode = SsspMode::charged_oracle;
  Rat eps{1};
  ChargePolicy charges;
  Cluster* cluster = nullptr;
  RoundLedger* ledger = nullptr;

  VertexId n() const { return graph->n; }
};

EngineContext make_context(const WeightedGraph& g, const Adjacency& adj, const PartitionMap& part,
                           SsspMode mode, const Rat& eps, Cluster& cluster, RoundLedger& ledger);

// Single-source shortest paths; exact in both modes.
DistanceTable sssp(EngineContext& ctx, VertexId source, const std::string& charge_label);

// Nearest source in T for every vertex (members of T get themselves at 0).
DistanceTable mssp(EngineContext& ctx, const SourceSet& T, const std::string& charge_label);

// For each v in T, nearest source in T \ {v}; needs |T| >= 2. Entries of
// vertices outside T are left undefined (source = -1).
DistanceTable exclusive_mssp(EngineContext& ctx, const SourceSet& T,
                             const std::string& charge_label);

// Test hook: the literal bit-subset reduction run in any mode.
DistanceTable exclusive_mssp_by_subsets(EngineContext& ctx, const SourceSet& T,
                                        const std::string& charge_label);

// Relaxation supersteps consumed by the most recent distributed-mode call.
std::int64_t last_relaxation_supersteps();

}  // namespace kmclust
