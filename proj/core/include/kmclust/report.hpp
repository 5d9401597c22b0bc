#pragma once

#include <string>

#include "json.hpp"
#include "kmclust/graph.hpp"
#include "kmclust/runtime.hpp"

namespace kmclust {

// Machine-readable record of one algorithm run; reproducible from
// (instance, parameters, seed).
struct RunReport {
  int schema_version = 1;
  std::string problem;  // facloc | pmedian | pcenter
  std::uint64_t instance_digest = 0;
  VertexId n = 0;
  std::size_t m = 0;
  MachineId k = 1;
  std::string sssp_mode;
  std::string eps;
  std::string beta;
  int p = 0;
  std::uint64_t seed = 0;
  std::string scale;  // normalization factor applied to the instance
  nlohmann::json solution;
  nlohmann::json radii_expo;  // facility runs: per-vertex radius exponents
  nlohmann::json ledger;
  nlohmann::json verification;

  std::string to_json() const;
  static RunReport from_json(const std::string& text);
};

std::string bench_csv_header();
std::string bench_csv_row(VertexId n, MachineId k, const RoundLedger& ledger,
                          const std::string& cost, std::uint64_t seed);

}  // namespace kmclust
