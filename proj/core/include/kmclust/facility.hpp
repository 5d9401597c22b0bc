#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kmclust/mis.hpp"
#include "kmclust/nbd_sketch.hpp"
#include "kmclust/radius.hpp"

namespace kmclust {

// Output-contract view of a clustering: every client knows its facility and
// the facility's host machine; every facility knows its clients and their
// hosts.
struct FacilitySolution {
  std::vector<VertexId> open;                     // ascending
  std::vector<VertexId> assigned_facility;        // per vertex; facilities map to themselves
  std::vector<MachineId> facility_host;           // per vertex: host of the assigned facility
  std::vector<MachineId> vertex_host;             // per vertex: its own host machine
  std::vector<std::vector<VertexId>> clients_of;  // parallel to `open`
  Rat opening_cost;
  Rat connection_cost;

  Rat total_cost() const { return opening_cost + connection_cost; }
  bool is_open(VertexId v) const { return assigned_facility[v] == v; }
  std::string to_json() const;
};

struct FacilityOptions {
  Rat beta{3, 2};
  int sketch_c = 4;
  std::optional<std::int64_t> ell_override;         // test hook
  std::vector<Rat> extra_query_distances;           // registered in the sketch grid
  std::shared_ptr<const NbdSketch> prebuilt_sketch; // reuse across p-median probes
  std::optional<std::uint64_t> sketch_seed_override;
  std::optional<Rat> uniform_cost;                  // overrides `costs` with a constant
  std::optional<long> grid_floor;                   // e_min override (p-median search)
  std::optional<long> grid_ceiling;                 // e_max override
  int mis_c = 4;
};

struct FacilityRun {
  FacilitySolution solution;
  RadiusTable radii;
  std::shared_ptr<const NbdSketch> sketch;
};

// Two-phase greedy: approximate radii from the sketch, then ascending radius
// classes; each class drops vertices within 2(1+eps)^2 r~ of the opened set
// and opens a distance-2(1+eps)^3 r~ approximate MIS of the rest. Clients
// are assigned by a final MSSP from the opened set.
FacilityRun mettu_plaxton_beta(EngineContext& ctx, const CostVector& costs, std::uint64_t seed,
                               const FacilityOptions& opts = {});

}  // namespace kmclust
