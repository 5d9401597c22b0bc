#include "kmclust/dist_engine.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace kmclust {

namespace {

thread_local std::int64_t g_last_relax_supersteps = 0;

bool lex_less(const Rat& d1, VertexId s1, const Rat& d2, VertexId s2) {
  if (d1 != d2) return d1 < d2;
  return s1 < s2;
}

struct OracleItem {
  Rat dist;
  VertexId src;
  VertexId v;
  bool operator>(const OracleItem& o) const {
    if (dist != o.dist) return o.dist < dist;
    if (src != o.src) return src > o.src;
    return v > o.v;
  }
};

// Multi-source Dijkstra carrying (dist, source) labels; lexicographic order
// makes the smallest source id win distance ties.
DistanceTable mssp_oracle(const EngineContext& ctx, const SourceSet& T) {
  const VertexId n = ctx.n();
  DistanceTable table;
  table.at.assign(n, {});
  std::vector<char> done(n, 0), reached(n, 0);
  std::priority_queue<OracleItem, std::vector<OracleItem>, std::greater<>> heap;
  for (VertexId t : T.members) {
    table.at[t] = {Rat{0}, t, ctx.part->host_of(t)};
    reached[t] = 1;
    heap.push({Rat{0}, t, t});
  }
  while (!heap.empty()) {
    auto [d, s, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    if (table.at[v].source != s || table.at[v].dist != d) continue;
    done[v] = 1;
    for (const auto& h : ctx.adj->neighbors(v)) {
      Rat cand = d + h.w;
      auto& cur = table.at[h.to];
      if (!reached[h.to] || lex_less(cand, s, cur.dist, cur.source)) {
        reached[h.to] = 1;
        cur = {cand, s, ctx.part->host_of(s)};
        heap.push({cand, s, h.to});
      }
    }
  }
  return table;
}

// Nearest and second-nearest distinct-source labels in one pass; the second
// label is what ExclusiveMSSP needs for vertices inside T.
DistanceTable exclusive_oracle(const EngineContext& ctx, const SourceSet& T) {
  const VertexId n = ctx.n();
  struct Slot {
    Rat dist;
    VertexId src = -1;
  };
  std::vector<std::array<Slot, 2>> labels(n);
  std::vector<int> accepted(n, 0);
  std::priority_queue<OracleItem, std::vector<OracleItem>, std::greater<>> heap;
  for (VertexId t : T.members) heap.push({Rat{0}, t, t});
  while (!heap.empty()) {
    auto [d, s, v] = heap.top();
    heap.pop();
    if (accepted[v] >= 2) continue;
    if (accepted[v] == 1 && labels[v][0].src == s) continue;
    labels[v][accepted[v]++] = {d, s};
    for (const auto& h : ctx.adj->neighbors(v)) {
      if (accepted[h.to] >= 2) continue;
      heap.push({d + h.w, s, h.to});
    }
  }
  DistanceTable table;
  table.at.assign(n, {});
  for (VertexId v : T.members) {
    const Slot* pick = nullptr;
    if (labels[v][0].src >= 0 && labels[v][0].src != v)
      pick = &labels[v][0];
    else if (accepted[v] > 1)
      pick = &labels[v][1];
    if (pick == nullptr) throw InvalidInstance("exclusive shortest paths: no other source reachable");
    table.at[v] = {pick->dist, pick->src, ctx.part->host_of(pick->src)};
  }
  return table;
}

// Synchronous relaxation over the cluster, one superstep per hop layer, with
// a one-word per-machine convergence flag after each layer and the full
// table exchange at the end so every machine learns the tree.
DistanceTable mssp_distributed(EngineContext& ctx, const SourceSet& T) {
  const VertexId n = ctx.n();
  const PartitionMap& part = *ctx.part;
  Cluster& cluster = *ctx.cluster;
  RoundLedger& ledger = *ctx.ledger;

  DistanceTable table;
  table.at.assign(n, {});
  std::vector<char> reached(n, 0);
  std::vector<VertexId> frontier;
  for (VertexId t : T.members) {
    table.at[t] = {Rat{0}, t, part.host_of(t)};
    reached[t] = 1;
    frontier.push_back(t);
  }

  auto improve = [&](VertexId x, const Rat& d, VertexId s) {
    auto& cur = table.at[x];
    if (!reached[x] || lex_less(d, s, cur.dist, cur.source)) {
      reached[x] = 1;
      cur = {d, s, part.host_of(s)};
      return true;
    }
    return false;
  };

  std::int64_t relax_steps = 0;
  std::vector<char> in_next(n, 0);
  while (true) {
    // local relaxations first; messages only cross machine boundaries
    std::vector<VertexId> next;
    auto mark_next = [&](VertexId x) {
      if (!in_next[x]) {
        in_next[x] = 1;
        next.push_back(x);
      }
    };
    std::vector<char> machine_seen(cluster.k(), 0);
    for (VertexId u : frontier) {
      const auto label = table.at[u];
      std::vector<MachineId> targets;
      for (const auto& h : ctx.adj->neighbors(u)) {
        MachineId m = part.host_of(h.to);
        if (m == part.host_of(u)) {
          if (improve(h.to, label.dist + h.w, label.source)) mark_next(h.to);
        } else if (!machine_seen[m]) {
          machine_seen[m] = 1;
          targets.push_back(m);
        }
      }
      for (MachineId m : targets) {
        machine_seen[m] = 0;
        if (cluster.k() > 1)
          cluster.send(part.host_of(u), m, {Rat{u}, Rat{label.source}, label.dist});
      }
    }
    bool any_change = false;
    if (!cluster.idle()) {
      auto inboxes = cluster.flush(ledger);
      for (MachineId m = 0; m < cluster.k(); ++m) {
        for (const auto& msg : inboxes[m]) {
          VertexId u = static_cast<VertexId>(msg.words[0].num());
          VertexId s = static_cast<VertexId>(msg.words[1].num());
          const Rat& du = msg.words[2];
          for (const auto& h : ctx.adj->neighbors(u)) {
            if (part.host_of(h.to) != m) continue;
            if (improve(h.to, du + h.w, s)) mark_next(h.to);
          }
        }
      }
    }
    for (VertexId x : next) in_next[x] = 0;
    any_change = !next.empty();
    ++relax_steps;
    if (cluster.k() > 1) {
      // convergence flags, one word per machine
      for (MachineId m = 0; m < cluster.k(); ++m)
        cluster.broadcast_all(m, {Rat{any_change ? 1 : 0}});
      cluster.flush(ledger);
    }
    if (!any_change) break;
    frontier = std::move(next);
    if (relax_steps > n + 2) throw std::logic_error("relaxation failed to converge");
  }
  g_last_relax_supersteps = relax_steps - 1;

  for (VertexId v = 0; v < n; ++v)
    if (!reached[v]) throw InvalidInstance("unreachable vertex in shortest-path computation");

  // tree exchange: every machine learns every (v, source, dist) triple
  if (cluster.k() > 1) {
    for (MachineId m = 0; m < cluster.k(); ++m)
      for (VertexId v : part.hosted[m])
        cluster.broadcast_all(m, {Rat{v}, Rat{table.at[v].source}, table.at[v].dist});
    cluster.flush(ledger);
  }
  return table;
}

int exclusive_subset_bits(std::size_t t_size) {
  int bits = 0;
  while ((std::size_t{1} << bits) < t_size) ++bits;
  return bits;
}

}  // namespace

std::int64_t last_relaxation_supersteps() { return g_last_relax_supersteps; }

SsspMode parse_sssp_mode(const std::string& text) {
  if (text == "distributed") return SsspMode::distributed;
  if (text == "charged") return SsspMode::charged_oracle;
  throw std::invalid_argument("sssp mode must be 'distributed' or 'charged'");
}

std::string sssp_mode_name(SsspMode mode) {
  return mode == SsspMode::distributed ? "distributed" : "charged";
}

SourceSet SourceSet::of(VertexId n, std::vector<VertexId> members) {
  SourceSet s;
  std::sort(members.begin(), members.end());
  s.members = std::move(members);
  s.mask.assign(n, 0);
  for (VertexId v : s.members) s.mask[v] = 1;
  return s;
}

EngineContext make_context(const WeightedGraph& g, const Adjacency& adj, const PartitionMap& part,
                           SsspMode mode, const Rat& eps, Cluster& cluster, RoundLedger& ledger) {
  EngineContext ctx;
  ctx.graph = &g;
  ctx.adj = &adj;
  ctx.part = &part;
  ctx.mode = mode;
  ctx.eps = eps;
  ctx.charges.enabled = (mode == SsspMode::charged_oracle);
  ctx.cluster = &cluster;
  ctx.ledger = &ledger;
  return ctx;
}

DistanceTable mssp(EngineContext& ctx, const SourceSet& T, const std::string& charge_label) {
  if (T.members.empty()) throw std::invalid_argument("source set must be nonempty");
  if (ctx.mode == SsspMode::charged_oracle) {
    charge(*ctx.ledger, ctx.charges, charge_label, ctx.n(), ctx.part->k, ctx.eps, 1);
    return mssp_oracle(ctx, T);
  }
  return mssp_distributed(ctx, T);
}

DistanceTable sssp(EngineContext& ctx, VertexId source, const std::string& charge_label) {
  return mssp(ctx, SourceSet::of(ctx.n(), {source}), charge_label);
}

DistanceTable exclusive_mssp(EngineContext& ctx, const SourceSet& T,
                             const std::string& charge_label) {
  if (T.size() < 2) throw std::invalid_argument("exclusive variant needs |T| >= 2");
  if (ctx.mode == SsspMode::charged_oracle) {
    charge(*ctx.ledger, ctx.charges, charge_label, ctx.n(), ctx.part->k, ctx.eps,
           2 * exclusive_subset_bits(T.size()));
    return exclusive_oracle(ctx, T);
  }
  return exclusive_mssp_by_subsets(ctx, T, charge_label);
}

DistanceTable exclusive_mssp_by_subsets(EngineContext& ctx, const SourceSet& T,
                                        const std::string& charge_label) {
  if (T.size() < 2) throw std::invalid_argument("exclusive variant needs |T| >= 2");
  const VertexId n = ctx.n();

  if (ctx.mode == SsspMode::distributed && ctx.cluster->k() > 1) {
    // membership exchange so every machine can index T consistently
    for (MachineId m = 0; m < ctx.cluster->k(); ++m)
      for (VertexId v : ctx.part->hosted[m])
        if (T.contains(v)) ctx.cluster->broadcast_all(m, {Rat{v}});
    ctx.cluster->flush(*ctx.ledger);
  }

  const int bits = exclusive_subset_bits(T.size());
  DistanceTable best;
  best.at.assign(n, {});
  bool first_round = true;
  for (int bit = 0; bit < bits; ++bit) {
    for (int side = 0; side <= 1; ++side) {
      std::vector<VertexId> subset;
      for (std::size_t idx = 0; idx < T.members.size(); ++idx)
        if (((idx >> bit) & 1u) == static_cast<unsigned>(side)) subset.push_back(T.members[idx]);
      if (subset.empty()) continue;
      SourceSet sub = SourceSet::of(n, subset);
      DistanceTable part_table = mssp(ctx, sub, charge_label);
      for (VertexId v : T.members) {
        if (sub.contains(v)) continue;
        const auto& cand = part_table.at[v];
        auto& cur = best.at[v];
        if (first_round || cur.source < 0 ||
            lex_less(cand.dist, cand.source, cur.dist, cur.source))
          cur = cand;
      }
      first_round = false;
    }
  }
  for (VertexId v : T.members)
    if (best.at[v].source < 0) throw std::logic_error("subset cover missed a member");
  return best;
}

}  // namespace kmclust
