#include "kmclust/radius.hpp"

#include <stdexcept>

namespace kmclust {

long radius_grid_floor(const Rat& eps, const Rat& beta, const Rat& min_cost) {
  WideRat target = to_wide(eps) / 2 * to_wide(beta) * to_wide(min_cost);
  long e = floor_log(1 + to_wide(eps), target);
  return std::min(e, 0L);
}

long radius_grid_ceiling(const Rat& eps, const Rat& beta, const Rat& max_cost, VertexId n,
                         const Rat& max_weight) {
  // alpha(v, r) >= r - it crosses beta*f_max at the latest once
  // (1+eps)^e dominates beta*f_max + n*N (generous diameter bound)
  WideRat bound = to_wide(beta) * to_wide(max_cost) +
                  WideRat(static_cast<long>(n)) * WideRat(static_cast<long>(n)) *
                      to_wide(max(max_weight, Rat{1}));
  return ceil_log(1 + to_wide(eps), bound) + 2;
}

RadiusTable compute_radii(const NbdSketch& sketch, const CostVector& costs, const Rat& beta) {
  const QueryGrid& grid = sketch.grid();
  const VertexId n = sketch.n();
  if (static_cast<VertexId>(costs.f.size()) != n)
    throw std::invalid_argument("cost vector does not match sketch");

  const long e_min = grid.e_min();
  const long e_max = grid.e_max();

  // level widths (1+eps)^{e+1} - (1+eps)^e as long doubles
  std::vector<long double> delta(e_max - e_min + 1);
  {
    WideRat base = 1 + to_wide(grid.eps());
    WideRat p = pow_ratio(base, e_min);
    for (long e = e_min; e <= e_max; ++e) {
      WideRat next = p * base;
      WideRat gap = next - p;
      delta[e - e_min] = static_cast<long double>(gap.get_d());
      p = next;
    }
  }
  std::vector<std::size_t> power_idx(e_max - e_min + 1);
  for (long e = e_min; e <= e_max; ++e) power_idx[e - e_min] = grid.index_of_power(e);

  RadiusTable table;
  table.eps = grid.eps();
  table.expo.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    long double threshold = to_wide(beta * costs.f[v]).get_d();
    long double sum = 0.0L;
    bool found = false;
    for (long e = e_min; e <= e_max; ++e) {
      sum += static_cast<long double>(sketch.query_size(v, power_idx[e - e_min])) *
             delta[e - e_min];
      if (sum > threshold) {
        table.expo[v] = e;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("radius threshold never crossed; grid ceiling too low");
  }
  return table;
}

}  // namespace kmclust
