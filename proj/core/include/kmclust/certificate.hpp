#pragma once

#include <string>
#include <vector>

#include "kmclust/facility.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/radius.hpp"

namespace kmclust {

// Dual values certifying the facility-location guarantee:
//   w_ij = (1/beta) max{0, r~_i - d_up(i,j)}   (d_up rounds up to a (1+eps)
//          power; d_up(i,i) = 0)
//   v_j  = min_i d(i,j) + w_ij
//   s_j  = w_ij for the unique open i the client contributes to, else 0.
// sigma is the explicit scaling that makes (v/sigma, w/sigma) dual feasible.
struct DualCertificate {
  Rat beta;
  Rat eps;
  std::vector<WideRat> v;
  std::vector<WideRat> s;
  std::vector<std::vector<std::pair<VertexId, WideRat>>> contributions;  // per facility i
  std::vector<VertexId> ambiguous_s;  // clients contributing to several open facilities
  WideRat sigma;
  WideRat sum_v;

  WideRat scaled_dual_total() const { return sum_v / sigma; }
  std::string to_json() const;
};

DualCertificate build_dual_certificate(const MetricOracle& metric, const RadiusTable& radii,
                                       const CostVector& costs, const Rat& beta,
                                       const std::vector<VertexId>& open_set);

struct CertCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CertReport {
  bool ok = true;
  std::vector<CertCheck> checks;
  std::vector<VertexId> violating_clients;
  WideRat sigma;
  std::string to_json() const;
};

// Checks, all in exact arithmetic with slack 3(1+eps)^{slack_power}:
//  per-client  3(1+eps)^c1 v_j >= d(j, S) + beta s_j
//  aggregate   C + 2 beta F <= 3(1+eps)^c1 sum_j v_j
//  dual constraints v_j - w_ij <= d(i,j), scaled feasibility
//  sum_j w_ij / sigma <= f_i, and uniqueness of s_j.
CertReport verify_certificate(const MetricOracle& metric, const CostVector& costs,
                              const FacilitySolution& sol, const DualCertificate& cert,
                              const Rat& eps, int slack_power = 10);

}  // namespace kmclust
