#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmclust/mis.hpp"

namespace kmclust {

struct CenterProbe {
  long expo = 0;          // probe distance (1+eps)^expo
  std::size_t mis_size = 0;
};

struct CenterSolution {
  std::vector<VertexId> centers;          // at most p, ascending
  std::vector<VertexId> assigned_center;  // per vertex
  std::vector<MachineId> center_host;     // per vertex
  Rat radius;                             // max client distance achieved
  Rat radius_eps{1, 2};                   // probe ladder base is 1 + radius_eps
  long d_probe_expo = 0;                  // accepted probe exponent
  bool trivial = false;                   // p = n shortcut
  std::vector<CenterProbe> probes;
  std::string to_json() const;
};

struct PCenterOptions {
  int mis_c = 4;
};

// Ascending scan over the (1+eps)-power probe radii d in [1, nN]; each probe
// asks for a distance-2(1+eps)d approximate MIS of the whole vertex set and
// the first probe whose MIS has at most p members wins.
CenterSolution solve_pcenter(EngineContext& ctx, int p, std::uint64_t seed,
                             const PCenterOptions& opts = {});

}  // namespace kmclust
