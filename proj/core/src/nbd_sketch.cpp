#include "kmclust/nbd_sketch.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "json.hpp"
#include "kmclust/rng.hpp"

namespace kmclust {

namespace {

// Rank boundaries (1+eps')^a / n^2 for a = 1..a_max as long doubles; the
// realized level of a draw u is the largest a with boundary[a] <= u.
struct RankTable {
  std::vector<long double> boundary;  // index a, valid from 1
  long a_max = 0;

  static RankTable make(VertexId n, const Rat& eps_prime) {
    RankTable rt;
    WideRat n2(static_cast<long>(n));
    n2 *= n;
    WideRat base = 1 + to_wide(eps_prime);
    rt.a_max = floor_log(base, n2);  // (1+eps')^a_max / n^2 <= 1
    if (rt.a_max < 1) {
      // degenerate n = 1: a single level at rank 1/2, the unbiased value for
      // a singleton ball
      rt.a_max = 1;
      rt.boundary = {0.0L, 0.5L, 2.0L};
      return rt;
    }
    rt.boundary.assign(rt.a_max + 2, 0.0L);
    WideRat val = base / n2;
    for (long a = 1; a <= rt.a_max + 1; ++a) {
      rt.boundary[a] = static_cast<long double>(val.get_d());
      val *= base;
    }
    return rt;
  }

  long level_of(double u) const {
    auto it = std::upper_bound(boundary.begin() + 1, boundary.begin() + a_max + 1,
                               static_cast<long double>(u));
    return static_cast<long>(it - boundary.begin()) - 1;
  }

  double rank_value(long a) const { return static_cast<double>(boundary[a]); }
};

long draw_level(Rng& rng, const RankTable& rt) {
  // ranks below (1+eps')/n^2 are resampled; same distribution conditioned on
  // the good event the analysis assumes
  for (;;) {
    double u = rng.unit();
    if (static_cast<long double>(u) >= rt.boundary[1]) return rt.level_of(u);
  }
}

// Assembles sum-over-repetitions of the query staircase R(v, d) = rounded
// rank of the smallest rank level reaching v within d. Improvements arrive in
// rank-ascending, distance-descending order; each creates one step of the
// staircase at its own distance, and demotes the previous (larger-distance)
// step's floor from the sentinel 1 to the new rank.
struct SketchAccumulator {
  VertexId n;
  const QueryGrid* grid;
  std::int64_t ell;
  std::vector<double> acc;  // staircase step diffs during build, finalized below
  std::vector<double> tail_rank;
  std::vector<std::size_t> tail_g;
  std::vector<char> has_tail;

  SketchAccumulator(VertexId n_, const QueryGrid* g, std::int64_t ell_)
      : n(n_), grid(g), ell(ell_), acc(static_cast<std::size_t>(n_) * g->size(), 0.0),
        tail_rank(n_, 1.0), tail_g(n_, 0), has_tail(n_, 0) {}

  void begin_repetition() { std::fill(has_tail.begin(), has_tail.end(), 0); }

  // v newly reachable at `dist` with rounded rank `rank`; `dist` is strictly
  // below and `rank` strictly above every earlier entry of this repetition
  void record(VertexId v, const Rat& dist, double rank) {
    std::size_t g = grid->ceil_index(dist);
    if (g >= grid->size()) return;  // beyond every query point
    double* row = acc.data() + static_cast<std::size_t>(v) * grid->size();
    row[g] += rank - 1.0;
    if (has_tail[v]) row[tail_g[v]] += 1.0 - rank;  // old tail now floors at `rank`
    tail_g[v] = g;
    has_tail[v] = 1;
  }

  void finalize() {
    const std::size_t gs = grid->size();
    for (VertexId v = 0; v < n; ++v) {
      double running = static_cast<double>(ell);  // sentinel base: rank 1 per repetition
      for (std::size_t g = 0; g < gs; ++g) {
        running += acc[static_cast<std::size_t>(v) * gs + g];
        acc[static_cast<std::size_t>(v) * gs + g] = running;
      }
    }
  }
};

struct PruneItem {
  Rat dist;
  VertexId v;
  bool operator>(const PruneItem& o) const {
    if (dist != o.dist) return o.dist < dist;
    return v > o.v;
  }
};

}  // namespace

SketchParams SketchParams::make(VertexId n, const Rat& eps, int c,
                                std::optional<std::int64_t> ell_override) {
  if (!eps.is_positive() || eps > Rat{1}) throw std::invalid_argument("need 0 < eps <= 1");
  if (n < 1) throw std::invalid_argument("need n >= 1");
  SketchParams p;
  p.eps = eps;
  p.eps_prime = eps / (eps + Rat{4});
  p.c = c;
  WideRat n2(static_cast<long>(n));
  n2 *= n;
  p.rank_levels = std::max(1L, ceil_log(1 + to_wide(p.eps_prime), n2));
  if (ell_override) {
    p.repetitions = *ell_override;
  } else {
    int log_n = 0;
    while ((VertexId{1} << log_n) < n) ++log_n;
    log_n = std::max(log_n, 1);
    WideRat ell = WideRat(c) * log_n / (to_wide(p.eps_prime) * to_wide(p.eps_prime));
    WideInt units;
    mpz_cdiv_q(units.get_mpz_t(), ell.get_num_mpz_t(), ell.get_den_mpz_t());
    p.repetitions = units.get_si();
  }
  if (p.repetitions < 1) p.repetitions = 1;
  return p;
}

QueryGrid QueryGrid::powers_with_extras(const Rat& eps, long e_min, long e_max,
                                        const std::vector<Rat>& extras) {
  if (e_max < e_min) throw std::invalid_argument("bad exponent range");
  QueryGrid g;
  g.eps_ = eps;
  g.e_min_ = e_min;
  g.e_max_ = e_max;
  WideRat base = 1 + to_wide(eps);
  std::vector<std::pair<WideRat, bool>> vals;  // value, is_power
  WideRat p = pow_ratio(base, e_min);
  for (long e = e_min; e <= e_max; ++e) {
    vals.push_back({p, true});
    p *= base;
  }
  for (const Rat& d : extras) {
    if (!d.is_positive()) throw std::invalid_argument("query distances must be positive");
    vals.push_back({to_wide(d), false});
  }
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  vals.erase(std::unique(vals.begin(), vals.end(),
                         [](const auto& a, const auto& b) { return a.first == b.first; }),
             vals.end());
  g.exact_.reserve(vals.size());
  g.ld_.reserve(vals.size());
  for (const auto& [v, is_pow] : vals) {
    g.exact_.push_back(v);
    g.ld_.push_back(static_cast<long double>(v.get_d()));
  }
  g.power_index_.assign(e_max - e_min + 1, 0);
  p = pow_ratio(base, e_min);
  std::size_t cursor = 0;
  for (long e = e_min; e <= e_max; ++e) {
    while (g.exact_[cursor] < p) ++cursor;
    g.power_index_[e - e_min] = cursor;
    p *= base;
  }
  return g;
}

std::size_t QueryGrid::index_of_power(long e) const {
  if (e < e_min_ || e > e_max_) throw std::out_of_range("power exponent outside grid");
  return power_index_[e - e_min_];
}

std::size_t QueryGrid::index_of_distance(const Rat& d) const {
  std::size_t i = ceil_index(d);
  if (i == size() || value_exact(i) != to_wide(d))
    throw std::invalid_argument("distance was not registered in the query grid: " + d.str());
  return i;
}

std::size_t QueryGrid::ceil_index(const Rat& d) const {
  long double x = d.to_long_double();
  // fast search on the float values, exact disambiguation near the boundary
  long double slack = std::max(std::fabs(x), 1.0L) * 1e-12L;
  std::size_t lo =
      std::lower_bound(ld_.begin(), ld_.end(), x - slack) - ld_.begin();
  WideRat dx = to_wide(d);
  while (lo < ld_.size() && exact_[lo] < dx) ++lo;
  return lo;
}

std::string QueryGrid::to_json() const {
  nlohmann::json j;
  j["eps"] = eps_.str();
  j["e_min"] = e_min_;
  j["e_max"] = e_max_;
  auto& vals = j["distances"] = nlohmann::json::array();
  for (const auto& v : exact_) vals.push_back(v.get_str());
  return j.dump();
}

QueryGrid QueryGrid::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  QueryGrid g;
  g.eps_ = Rat::parse(j.at("eps").get<std::string>());
  g.e_min_ = j.at("e_min").get<long>();
  g.e_max_ = j.at("e_max").get<long>();
  for (const auto& s : j.at("distances")) {
    WideRat v(s.get<std::string>());
    v.canonicalize();
    g.exact_.push_back(v);
    g.ld_.push_back(static_cast<long double>(v.get_d()));
  }
  // rebuild the power index
  WideRat base = 1 + to_wide(g.eps_);
  g.power_index_.assign(g.e_max_ - g.e_min_ + 1, 0);
  WideRat p = pow_ratio(base, g.e_min_);
  std::size_t cursor = 0;
  for (long e = g.e_min_; e <= g.e_max_; ++e) {
    while (cursor < g.exact_.size() && g.exact_[cursor] < p) ++cursor;
    g.power_index_[e - g.e_min_] = cursor;
    p *= base;
  }
  return g;
}

std::vector<long> replay_rank_levels(VertexId n, const SketchParams& params, std::uint64_t seed,
                                     std::int64_t repetition) {
  RankTable rt = RankTable::make(n, params.eps_prime);
  Rng rng = derive_rng(seed, "sketch.ranks", static_cast<std::uint64_t>(repetition));
  std::vector<long> lvl(n);
  for (VertexId v = 0; v < n; ++v) lvl[v] = draw_level(rng, rt);
  return lvl;
}

NbdSketch NbdSketch::build(EngineContext& ctx, const SketchParams& params, QueryGrid grid,
                           std::uint64_t seed) {
  const VertexId n = ctx.n();
  NbdSketch sk;
  sk.params_ = params;
  sk.seed_ = seed;
  sk.n_ = n;

  RankTable rt = RankTable::make(n, params.eps_prime);
  sk.max_rank_value_ = rt.rank_value(rt.a_max);
  SketchAccumulator accum(n, &grid, params.repetitions);

  std::vector<std::vector<VertexId>> buckets(rt.a_max + 1);
  std::int64_t nonempty_calls = 0;

  if (ctx.mode == SsspMode::distributed) {
    for (std::int64_t rep = 0; rep < params.repetitions; ++rep) {
      Rng rng = derive_rng(seed, "sketch.ranks", static_cast<std::uint64_t>(rep));
      for (auto& b : buckets) b.clear();
      for (VertexId v = 0; v < n; ++v) buckets[draw_level(rng, rt)].push_back(v);
      accum.begin_repetition();
      std::vector<Rat> best(n);
      std::vector<char> reached(n, 0);
      for (long a = 1; a <= rt.a_max; ++a) {
        if (buckets[a].empty()) continue;
        ++nonempty_calls;
        DistanceTable table = mssp(ctx, SourceSet::of(n, buckets[a]), "sketch");
        double rank = rt.rank_value(a);
        for (VertexId v = 0; v < n; ++v) {
          const Rat& d = table.at[v].dist;
          if (!reached[v] || d < best[v]) {
            reached[v] = 1;
            best[v] = d;
            accum.record(v, d, rank);
          }
        }
      }
    }
  } else {
    // rank-ascending pruned multi-source Dijkstra; produces exactly the
    // distance improvements the per-level MSSP loop would record
    const Adjacency& adj = *ctx.adj;
    std::vector<Rat> best(n), tent(n);
    std::vector<std::int64_t> best_stamp(n, -1), tent_stamp(n, -1), settled_stamp(n, -1);
    std::int64_t level_token = 0;
    std::priority_queue<PruneItem, std::vector<PruneItem>, std::greater<>> heap;
    for (std::int64_t rep = 0; rep < params.repetitions; ++rep) {
      Rng rng = derive_rng(seed, "sketch.ranks", static_cast<std::uint64_t>(rep));
      for (auto& b : buckets) b.clear();
      for (VertexId v = 0; v < n; ++v) buckets[draw_level(rng, rt)].push_back(v);
      accum.begin_repetition();
      std::int64_t rep_token = rep;
      auto best_of = [&](VertexId v) -> const Rat* {
        return best_stamp[v] == rep_token ? &best[v] : nullptr;
      };
      for (long a = 1; a <= rt.a_max; ++a) {
        if (buckets[a].empty()) continue;
        ++nonempty_calls;
        ++level_token;
        double rank = rt.rank_value(a);
        for (VertexId s : buckets[a]) {
          // a source survives unless an earlier level already sits at distance 0 (impossible)
          tent[s] = Rat{0};
          tent_stamp[s] = level_token;
          heap.push({Rat{0}, s});
        }
        while (!heap.empty()) {
          auto [d, v] = heap.top();
          heap.pop();
          if (settled_stamp[v] == level_token) continue;
          if (tent_stamp[v] != level_token || tent[v] != d) continue;
          settled_stamp[v] = level_token;
          const Rat* b = best_of(v);
          if (b != nullptr && !(d < *b)) continue;  // pruned: dominated by earlier level
          best[v] = d;
          best_stamp[v] = rep_token;
          accum.record(v, d, rank);
          for (const auto& h : adj.neighbors(v)) {
            Rat cand = d + h.w;
            const Rat* bt = best_of(h.to);
            if (bt != nullptr && !(cand < *bt)) continue;
            if (tent_stamp[h.to] == level_token && !(cand < tent[h.to])) continue;
            if (settled_stamp[h.to] == level_token) continue;
            tent[h.to] = cand;
            tent_stamp[h.to] = level_token;
            heap.push({cand, h.to});
          }
        }
      }
    }
    charge(*ctx.ledger, ctx.charges, "sketch", n, ctx.part->k, ctx.eps, nonempty_calls);
  }

  accum.finalize();
  sk.grid_ = std::move(grid);
  sk.acc_ = std::move(accum.acc);
  sk.mssp_calls_ = nonempty_calls;
  return sk;
}

double NbdSketch::query_size(VertexId v, std::size_t grid_index) const {
  double avg =
      acc_[static_cast<std::size_t>(v) * grid_.size() + grid_index] /
      static_cast<double>(params_.repetitions);
  return 1.0 / avg - 1.0;
}

bool NbdSketch::sentinel_flag(VertexId v, std::size_t grid_index) const {
  double sum = acc_[static_cast<std::size_t>(v) * grid_.size() + grid_index];
  double all_ranked_max = static_cast<double>(params_.repetitions) * max_rank_value_;
  return sum > all_ranked_max + 1e-9;
}

std::string NbdSketch::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["seed"] = seed_;
  j["eps"] = params_.eps.str();
  j["c"] = params_.c;
  j["repetitions"] = params_.repetitions;
  j["rank_levels"] = params_.rank_levels;
  j["mssp_calls"] = mssp_calls_;
  j["max_rank_value"] = max_rank_value_;
  j["grid"] = nlohmann::json::parse(grid_.to_json());
  j["acc"] = acc_;
  return j.dump();
}

NbdSketch NbdSketch::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  NbdSketch sk;
  sk.n_ = j.at("n").get<VertexId>();
  sk.seed_ = j.at("seed").get<std::uint64_t>();
  sk.params_ = SketchParams::make(sk.n_, Rat::parse(j.at("eps").get<std::string>()),
                                  j.at("c").get<int>(), j.at("repetitions").get<std::int64_t>());
  sk.params_.rank_levels = j.at("rank_levels").get<long>();
  sk.mssp_calls_ = j.at("mssp_calls").get<std::int64_t>();
  sk.max_rank_value_ = j.at("max_rank_value").get<double>();
  sk.grid_ = QueryGrid::from_json(j.at("grid").dump());
  sk.acc_ = j.at("acc").get<std::vector<double>>();
  return sk;
}

}  // namespace kmclust
