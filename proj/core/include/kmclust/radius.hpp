#pragma once

#include <vector>

#include "kmclust/graph.hpp"
#include "kmclust/nbd_sketch.hpp"

namespace kmclust {

// Approximate Mettu-Plaxton radii stored as (1+eps)-power exponents;
// r~_v = (1+eps)^expo[v]. Exponents may be negative when opening costs sit
// below 1 (uniform-cost probes of the p-median search).
struct RadiusTable {
  Rat eps;
  std::vector<long> expo;

  WideRat value(VertexId v) const { return pow_ratio(1 + to_wide(eps), expo[v]); }
};

// Local computation on top of the sketch: r~_v = (1+eps)^{t-1} for the
// smallest t with sum_{i=e_min}^{t-1} q~_i(v) * ((1+eps)^{i+1} - (1+eps)^i)
// exceeding beta * f_v, where q~_i(v) queries the sketch at (1+eps)^i.
RadiusTable compute_radii(const NbdSketch& sketch, const CostVector& costs, const Rat& beta);

// Exponent floor that keeps the radius sandwich intact: (1+eps)^{e_min} is at
// most (eps/2) * beta * f_min.
long radius_grid_floor(const Rat& eps, const Rat& beta, const Rat& min_cost);
// Exponent ceiling guaranteeing the threshold sum crosses beta * f_max.
long radius_grid_ceiling(const Rat& eps, const Rat& beta, const Rat& max_cost,
                         VertexId n, const Rat& max_weight);

}  // namespace kmclust
