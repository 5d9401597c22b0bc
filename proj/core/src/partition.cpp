#include "kmclust/partition.hpp"

#include <stdexcept>

#include "kmclust/rng.hpp"

namespace kmclust {

PartitionMap random_partition(VertexId n, MachineId k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("machine count must be >= 1");
  if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
  PartitionMap pm;
  pm.k = k;
  pm.host.resize(n);
  pm.hosted.assign(k, {});
  Rng rng = derive_rng(seed, "partition");
  for (VertexId v = 0; v < n; ++v) {
    MachineId m = static_cast<MachineId>(rng.below(static_cast<std::uint64_t>(k)));
    pm.host[v] = m;
    pm.hosted[m].push_back(v);
  }
  return pm;
}

}  // namespace kmclust
