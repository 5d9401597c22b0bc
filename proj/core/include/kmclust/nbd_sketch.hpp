#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmclust/dist_engine.hpp"
#include "kmclust/wide_rat.hpp"

namespace kmclust {

// Parameters of the rank-based size-estimation structure.
struct SketchParams {
  Rat eps;                     // query-side approximation parameter
  Rat eps_prime;               // eps / (eps + 4)
  long rank_levels = 1;        // smallest t with (1+eps')^t >= n^2
  std::int64_t repetitions = 1;
  int c = 4;

  static SketchParams make(VertexId n, const Rat& eps, int c = 4,
                           std::optional<std::int64_t> ell_override = std::nullopt);
};

// Sorted distance grid the sketch can answer queries at: the (1+eps)^e power
// ladder for e in [e_min, e_max] plus any caller-registered probe distances.
class QueryGrid {
 public:
  static QueryGrid powers_with_extras(const Rat& eps, long e_min, long e_max,
                                      const std::vector<Rat>& extras = {});

  std::size_t size() const { return ld_.size(); }
  long e_min() const { return e_min_; }
  long e_max() const { return e_max_; }
  std::size_t index_of_power(long e) const;
  std::size_t index_of_distance(const Rat& d) const;  // exact member lookup
  // smallest index with grid value >= d; size() when d lies beyond the top
  std::size_t ceil_index(const Rat& d) const;
  long double value_ld(std::size_t i) const { return ld_[i]; }
  const WideRat& value_exact(std::size_t i) const { return exact_[i]; }
  const Rat& eps() const { return eps_; }

  std::string to_json() const;
  static QueryGrid from_json(const std::string& text);

 private:
  Rat eps_;
  long e_min_ = 0, e_max_ = 0;
  std::vector<WideRat> exact_;
  std::vector<long double> ld_;
  std::vector<std::size_t> power_index_;  // e - e_min -> grid index
};

// Neighborhood-size estimation structure: ell independent rank draws; within
// each repetition every vertex keeps, per grid distance, the smallest rounded
// rank reachable within that distance. Queries average the per-repetition
// ranks and return 1/avg - 1.
class NbdSketch {
 public:
  // Builds through the engines in ctx: distributed mode runs one MSSP per
  // nonempty rank level through the cluster; charged-oracle mode runs the
  // rank-ascending pruned multi-source Dijkstra (identical output) and books
  // one SSSP charge per nonempty level.
  static NbdSketch build(EngineContext& ctx, const SketchParams& params, QueryGrid grid,
                         std::uint64_t seed);

  double query_size(VertexId v, std::size_t grid_index) const;
  // True when some repetition had no qualifying level and contributed the
  // whole-range sentinel rank 1; cannot occur for grid distances >= 0 since
  // every vertex reaches its own rank level at distance 0.
  bool sentinel_flag(VertexId v, std::size_t grid_index) const;

  VertexId n() const { return n_; }
  const QueryGrid& grid() const { return grid_; }
  const SketchParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t mssp_calls() const { return mssp_calls_; }

  std::string to_json() const;
  static NbdSketch from_json(const std::string& text);

 private:
  SketchParams params_;
  QueryGrid grid_;
  std::uint64_t seed_ = 0;
  VertexId n_ = 0;
  std::int64_t mssp_calls_ = 0;
  double max_rank_value_ = 1.0;
  std::vector<double> acc_;  // n x grid.size(): sum over repetitions of rank(v, grid_i)
};

// Rank levels of one repetition, replayed from the seed (test hook; this is
// exactly the stream the builders consume).
std::vector<long> replay_rank_levels(VertexId n, const SketchParams& params, std::uint64_t seed,
                                     std::int64_t repetition);

}  // namespace kmclust
