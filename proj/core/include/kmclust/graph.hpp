#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmclust/rat.hpp"

namespace kmclust {

using VertexId = std::int32_t;

struct InvalidInstance : std::runtime_error {
  explicit InvalidInstance(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rat w;
};

// Undirected non-negative-weighted graph; the metric is its shortest-path
// distances. Connected, no self-loops; after normalization all weights >= 1
// and the largest weight is at most n^6.
struct WeightedGraph {
  VertexId n = 0;
  std::vector<Edge> edges;

  Rat max_weight() const;
  Rat min_weight() const;
};

struct CostVector {
  std::vector<Rat> f;  // per-vertex opening cost

  Rat min_cost() const;
  Rat max_cost() const;
};

struct HalfEdge {
  VertexId to;
  Rat w;
};

// CSR adjacency view of a WeightedGraph.
class Adjacency {
 public:
  explicit Adjacency(const WeightedGraph& g);

  std::span<const HalfEdge> neighbors(VertexId v) const {
    return {half_.data() + offset_[v], half_.data() + offset_[v + 1]};
  }
  VertexId n() const { return static_cast<VertexId>(offset_.size()) - 1; }

 private:
  std::vector<std::size_t> offset_;
  std::vector<HalfEdge> half_;
};

// Structural validation: vertex ids in range, no self-loops, positive weights
// and costs, cost vector length n, connectivity. Throws InvalidInstance.
void validate_instance(const WeightedGraph& g, const CostVector& costs);

bool is_connected(const WeightedGraph& g);

struct NormalizeResult {
  WeightedGraph graph;
  CostVector costs;
  Rat scale;  // everything was multiplied by this factor
};

// Scale weights and costs by a common factor so their minimum is >= 1.
// Rejects zero weights/costs and (post-scale) max weight above n^6.
NormalizeResult normalize_weights(const WeightedGraph& g, const CostVector& costs);

// Plain-text instance files: "n m" header, one "u v w" line per edge;
// cost file holds one rational per line.
std::string write_edge_list(const WeightedGraph& g);
WeightedGraph read_edge_list(const std::string& text);
std::string write_costs(const CostVector& costs);
CostVector read_costs(const std::string& text);

// JSON mirrors of the same two files.
std::string write_graph_json(const WeightedGraph& g);
WeightedGraph read_graph_json(const std::string& text);
std::string write_costs_json(const CostVector& costs);
CostVector read_costs_json(const std::string& text);

std::uint64_t instance_digest(const WeightedGraph& g, const CostVector& costs);

}  // namespace kmclust
