#pragma once

#include <cstdint>
#include <vector>

#include "kmclust/graph.hpp"

namespace kmclust {

using MachineId = std::int32_t;

// Vertex -> hosting machine map. Machines are 0..k-1; hosted sets partition V.
struct PartitionMap {
  MachineId k = 1;
  std::vector<MachineId> host;                  // per vertex
  std::vector<std::vector<VertexId>> hosted;    // per machine, ascending ids

  MachineId host_of(VertexId v) const { return host[v]; }
};

// Each vertex is assigned an i.i.d. uniform machine; deterministic in seed.
PartitionMap random_partition(VertexId n, MachineId k, std::uint64_t seed);

}  // namespace kmclust
