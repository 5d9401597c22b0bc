#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmclust/facility.hpp"

namespace kmclust {

struct ProbeRecord {
  std::int64_t grid_j = 0;   // z = grid_j * granularity
  std::string z;
  VertexId open_count = 0;
  int retry = 0;
};

struct BinarySearchTrace {
  std::vector<ProbeRecord> probes;
  bool exact_hit = false;
  bool bracket_fallback = false;
  std::string z_A, z_B;      // bracket opening costs (A: fewer than p, B: more)
  VertexId p1 = 0, p2 = 0;
  std::string prob_a, prob_b;
  std::string branch;        // "exact" | "A" | "Bprime" | "trivial"
  std::string to_json() const;
};

struct MedianSolution {
  std::vector<VertexId> centers;            // exactly p, ascending
  std::vector<VertexId> assigned_center;    // per vertex
  std::vector<MachineId> center_host;       // per vertex
  Rat cost;                                 // sum of client connection distances
  BinarySearchTrace trace;
  std::string to_json() const;
};

struct PMedianOptions {
  Rat beta{3, 2};
  int sketch_c = 4;
  std::optional<std::int64_t> ell_override;
  int mis_c = 4;
  int bracket_retries = 3;
};

// Binary search on the uniform opening cost z wrapping the facility solver,
// then the randomized rounding between the bracketing solutions, coordinated
// by machine 0. Exactly p centers, always.
MedianSolution solve_pmedian(EngineContext& ctx, int p, std::uint64_t seed,
                             const PMedianOptions& opts = {});

// Coordinator-side sampling: a uniform size-`count` subset of `pool` chosen
// via per-machine quotas; every pool vertex is included with probability
// count/|pool|. Exposed for the frequency tests.
std::vector<VertexId> sample_by_machine_quotas(const std::vector<VertexId>& pool,
                                               std::size_t count, const PartitionMap& part,
                                               Cluster& cluster, RoundLedger& ledger,
                                               std::uint64_t seed);

}  // namespace kmclust
