#include "kmclust/graph.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "kmclust/rng.hpp"
#include "kmclust/wide_rat.hpp"

namespace kmclust {

Rat WeightedGraph::max_weight() const {
  Rat m = edges.empty() ? Rat{1} : edges.front().w;
  for (const auto& e : edges) m = max(m, e.w);
  return m;
}

Rat WeightedGraph::min_weight() const {
  Rat m = edges.empty() ? Rat{1} : edges.front().w;
  for (const auto& e : edges) m = min(m, e.w);
  return m;
}

Rat CostVector::min_cost() const {
  Rat m = f.empty() ? Rat{1} : f.front();
  for (const auto& c : f) m = min(m, c);
  return m;
}

Rat CostVector::max_cost() const {
  Rat m = f.empty() ? Rat{1} : f.front();
  for (const auto& c : f) m = max(m, c);
  return m;
}

Adjacency::Adjacency(const WeightedGraph& g) {
  std::vector<std::size_t> deg(g.n, 0);
  for (const auto& e : g.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offset_.assign(g.n + 1, 0);
  for (VertexId v = 0; v < g.n; ++v) offset_[v + 1] = offset_[v] + deg[v];
  half_.resize(offset_[g.n]);
  std::vector<std::size_t> cur(offset_.begin(), offset_.end() - 1);
  for (const auto& e : g.edges) {
    half_[cur[e.u]++] = {e.v, e.w};
    half_[cur[e.v]++] = {e.u, e.w};
  }
}

bool is_connected(const WeightedGraph& g) {
  if (g.n <= 1) return true;
  Adjacency adj(g);
  std::vector<char> seen(g.n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  VertexId count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto& h : adj.neighbors(v)) {
      if (!seen[h.to]) {
        seen[h.to] = 1;
        ++count;
        stack.push_back(h.to);
      }
    }
  }
  return count == g.n;
}

void validate_instance(const WeightedGraph& g, const CostVector& costs) {
  if (g.n <= 0) throw InvalidInstance("graph must have at least one vertex");
  if (static_cast<VertexId>(costs.f.size()) != g.n)
    throw InvalidInstance("cost vector length must equal vertex count");
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      throw InvalidInstance("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInstance("self-loops are not allowed");
    if (!e.w.is_positive()) throw InvalidInstance("edge weights must be positive");
  }
  for (const auto& c : costs.f)
    if (!c.is_positive()) throw InvalidInstance("opening costs must be positive");
  if (!is_connected(g)) throw InvalidInstance("graph must be connected");
}

NormalizeResult normalize_weights(const WeightedGraph& g, const CostVector& costs) {
  validate_instance(g, costs);
  Rat minval = costs.min_cost();
  if (!g.edges.empty()) minval = min(minval, g.min_weight());
  if (!minval.is_positive()) throw InvalidInstance("zero-weight edge or zero-cost vertex");

  Rat scale{1};
  if (minval < Rat{1}) scale = Rat{1} / minval;

  NormalizeResult out;
  out.scale = scale;
  out.graph = g;
  out.costs = costs;
  for (auto& e : out.graph.edges) e.w *= scale;
  for (auto& c : out.costs.f) c *= scale;

  if (!out.graph.edges.empty()) {
    WideInt cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), static_cast<unsigned long>(g.n), 6);
    if (to_wide(out.graph.max_weight()) > WideRat(cap))
      throw InvalidInstance("normalized max edge weight exceeds n^6");
  }
  return out;
}

std::string write_edge_list(const WeightedGraph& g) {
  std::ostringstream os;
  os << g.n << " " << g.edges.size() << "\n";
  for (const auto& e : g.edges) os << e.u << " " << e.v << " " << e.w.str() << "\n";
  return os.str();
}

WeightedGraph read_edge_list(const std::string& text) {
  std::istringstream is(text);
  WeightedGraph g;
  std::size_t m = 0;
  if (!(is >> g.n >> m)) throw InvalidInstance("bad edge-list header");
  g.edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    VertexId u, v;
    std::string w;
    if (!(is >> u >> v >> w)) throw InvalidInstance("truncated edge list");
    g.edges.push_back({u, v, Rat::parse(w)});
  }
  return g;
}

std::string write_costs(const CostVector& costs) {
  std::ostringstream os;
  for (const auto& c : costs.f) os << c.str() << "\n";
  return os.str();
}

CostVector read_costs(const std::string& text) {
  std::istringstream is(text);
  CostVector out;
  std::string line;
  while (is >> line) out.f.push_back(Rat::parse(line));
  return out;
}

std::string write_graph_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w.str()});
  return j.dump(2) + "\n";
}

WeightedGraph read_graph_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  WeightedGraph g;
  g.n = j.at("n").get<VertexId>();
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<VertexId>(), e.at(1).get<VertexId>(),
                       Rat::parse(e.at(2).get<std::string>())});
  return g;
}

std::string write_costs_json(const CostVector& costs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : costs.f) j.push_back(c.str());
  return j.dump(2) + "\n";
}

CostVector read_costs_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CostVector out;
  for (const auto& c : j) out.f.push_back(Rat::parse(c.get<std::string>()));
  return out;
}

std::uint64_t instance_digest(const WeightedGraph& g, const CostVector& costs) {
  std::string blob = write_edge_list(g) + "|" + write_costs(costs);
  return hash_label(blob);
}

}  // namespace kmclust
