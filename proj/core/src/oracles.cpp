#include "kmclust/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <stdexcept>

namespace kmclust {

namespace {

struct HeapItem {
  Rat dist;
  VertexId v;
  bool operator>(const HeapItem& o) const {
    if (dist != o.dist) return o.dist < dist;
    return v > o.v;
  }
};

void enumerate_subsets_of_size(VertexId n, int p, const std::function<void(const std::vector<VertexId>&)>& fn) {
  std::vector<VertexId> pick(p);
  std::function<void(int, VertexId)> rec = [&](int idx, VertexId from) {
    if (idx == p) {
      fn(pick);
      return;
    }
    for (VertexId v = from; v <= n - (p - idx); ++v) {
      pick[idx] = v;
      rec(idx + 1, v + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Rat> dijkstra_exact(const Adjacency& adj, VertexId source) {
  const VertexId n = adj.n();
  std::vector<Rat> dist(n);
  std::vector<char> done(n, 0), reached(n, 0);
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  dist[source] = Rat{0};
  reached[source] = 1;
  heap.push({Rat{0}, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (const auto& h : adj.neighbors(v)) {
      Rat cand = d + h.w;
      if (!reached[h.to] || cand < dist[h.to]) {
        reached[h.to] = 1;
        dist[h.to] = cand;
        heap.push({cand, h.to});
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!reached[v]) throw InvalidInstance("unreachable vertex in shortest-path computation");
  return dist;
}

std::vector<Rat> dijkstra_exact(const WeightedGraph& g, VertexId source) {
  Adjacency adj(g);
  return dijkstra_exact(adj, source);
}

VertexId MetricOracle::default_cap() {
  if (const char* env = std::getenv("KMCLUST_ORACLE_CAP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<VertexId>(v);
  }
  return 2000;
}

MetricOracle::MetricOracle(const WeightedGraph& g, std::optional<VertexId> cap) : n_(g.n) {
  VertexId limit = cap.value_or(default_cap());
  if (n_ > limit)
    throw std::invalid_argument("instance too large for the all-pairs oracle (n > cap)");
  Adjacency adj(g);
  dist_.resize(static_cast<std::size_t>(n_) * n_);
  for (VertexId v = 0; v < n_; ++v) {
    auto row = dijkstra_exact(adj, v);
    std::copy(row.begin(), row.end(), dist_.begin() + static_cast<std::size_t>(v) * n_);
  }
}

Rat MetricOracle::nearest_in(VertexId v, const std::vector<VertexId>& set) const {
  if (set.empty()) throw std::invalid_argument("nearest_in over empty set");
  Rat best = d(v, set.front());
  for (VertexId s : set) best = min(best, d(v, s));
  return best;
}

Rat exact_radius_of(const std::vector<Rat>& dists_from_v, const Rat& beta_cost) {
  // alpha(r) = cnt(r) * r - prefix(r) is piecewise linear and increasing;
  // scan breakpoints (the sorted distances) for the segment hitting beta_cost.
  std::vector<Rat> d = dists_from_v;
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  Rat prefix{0};
  std::size_t idx = 0;
  while (idx < n) {
    std::size_t next = idx;
    while (next < n && d[next] == d[idx]) ++next;  // group ties
    // segment [d[idx], d_next) with count = next
    prefix += d[idx] * Rat{static_cast<std::int64_t>(next - idx)};
    Rat cnt{static_cast<std::int64_t>(next)};
    Rat r = (beta_cost + prefix) / cnt;
    bool below_next = (next == n) || (r < d[next]);
    if (r >= d[idx] && below_next) return r;
    idx = next;
  }
  throw std::logic_error("radius solve fell off the breakpoint scan");
}

std::vector<Rat> exact_radii(const MetricOracle& metric, const CostVector& costs, const Rat& beta) {
  const VertexId n = metric.n();
  std::vector<Rat> out(n);
  std::vector<Rat> row(n);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u = 0; u < n; ++u) row[u] = metric.d(v, u);
    out[v] = exact_radius_of(row, beta * costs.f[v]);
  }
  return out;
}

FacilityAssignment sequential_mp(const MetricOracle& metric, const CostVector& costs,
                                 const Rat& beta) {
  const VertexId n = metric.n();
  std::vector<Rat> radius = exact_radii(metric, costs, beta);
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (radius[a] != radius[b]) return radius[a] < radius[b];
    return a < b;
  });

  FacilityAssignment out;
  out.facility_of.assign(n, -1);
  out.opening_cost = Rat{0};
  out.connection_cost = Rat{0};
  for (VertexId v : order) {
    bool blocked = false;
    for (VertexId s : out.open) {
      if (metric.d(v, s) <= radius[v] * Rat{2}) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.open.push_back(v);
  }
  std::sort(out.open.begin(), out.open.end());
  for (VertexId s : out.open) out.opening_cost += costs.f[s];
  for (VertexId v = 0; v < n; ++v) {
    VertexId best = out.open.front();
    for (VertexId s : out.open)
      if (metric.d(v, s) < metric.d(v, best)) best = s;
    out.facility_of[v] = best;
    out.connection_cost += metric.d(v, best);
  }
  return out;
}

BruteForceResult brute_force_facloc(const MetricOracle& metric, const CostVector& costs) {
  const VertexId n = metric.n();
  if (n > 12) throw std::invalid_argument("facility-location brute force capped at n = 12");
  BruteForceResult best;
  bool have = false;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Rat cost{0};
    for (VertexId v = 0; v < n; ++v)
      if (mask & (1u << v)) cost += costs.f[v];
    for (VertexId j = 0; j < n; ++j) {
      Rat nearest;
      bool first = true;
      for (VertexId v = 0; v < n; ++v) {
        if (!(mask & (1u << v))) continue;
        if (first || metric.d(j, v) < nearest) nearest = metric.d(j, v);
        first = false;
      }
      cost += nearest;
    }
    if (!have || cost < best.cost) {
      have = true;
      best.cost = cost;
      best.witness.clear();
      for (VertexId v = 0; v < n; ++v)
        if (mask & (1u << v)) best.witness.push_back(v);
    }
  }
  return best;
}

BruteForceResult brute_force_pmedian(const MetricOracle& metric, int p) {
  const VertexId n = metric.n();
  if (n > 15 || p > 5 || p < 1 || p > n)
    throw std::invalid_argument("p-median brute force capped at n = 15, p = 5");
  BruteForceResult best;
  bool have = false;
  enumerate_subsets_of_size(n, p, [&](const std::vector<VertexId>& centers) {
    Rat cost{0};
    for (VertexId j = 0; j < n; ++j) cost += metric.nearest_in(j, centers);
    if (!have || cost < best.cost) {
      have = true;
      best.cost = cost;
      best.witness = centers;
    }
  });
  return best;
}

BruteForceResult brute_force_pcenter(const MetricOracle& metric, int p) {
  const VertexId n = metric.n();
  if (n > 15 || p > 5 || p < 1 || p > n)
    throw std::invalid_argument("p-center brute force capped at n = 15, p = 5");
  BruteForceResult best;
  bool have = false;
  enumerate_subsets_of_size(n, p, [&](const std::vector<VertexId>& centers) {
    Rat worst{0};
    for (VertexId j = 0; j < n; ++j) worst = max(worst, metric.nearest_in(j, centers));
    if (!have || worst < best.cost) {
      have = true;
      best.cost = worst;
      best.witness = centers;
    }
  });
  return best;
}

}  // namespace kmclust
