#include "kmclust/certificate.hpp"

#include <algorithm>

#include "json.hpp"

namespace kmclust {

namespace {

// d rounded up to the nearest (1+eps) power; 0 stays 0.
WideRat round_up_power(const WideRat& base, const Rat& d) {
  if (d.is_zero()) return WideRat(0);
  return pow_ratio(base, ceil_log(base, to_wide(d)));
}

}  // namespace

DualCertificate build_dual_certificate(const MetricOracle& metric, const RadiusTable& radii,
                                       const CostVector& costs, const Rat& beta,
                                       const std::vector<VertexId>& open_set) {
  const VertexId n = metric.n();
  DualCertificate cert;
  cert.beta = beta;
  cert.eps = radii.eps;
  cert.v.assign(n, WideRat(0));
  cert.s.assign(n, WideRat(0));
  cert.contributions.assign(n, {});
  cert.sigma = WideRat(1);
  cert.sum_v = WideRat(0);

  const WideRat base = 1 + to_wide(radii.eps);
  const WideRat beta_w = to_wide(beta);
  std::vector<char> open_mask(n, 0);
  for (VertexId i : open_set) open_mask[i] = 1;

  std::vector<WideRat> radius_val(n);
  for (VertexId i = 0; i < n; ++i) radius_val[i] = radii.value(i);

  for (VertexId j = 0; j < n; ++j) {
    WideRat best;
    bool have = false;
    int open_contributors = 0;
    for (VertexId i = 0; i < n; ++i) {
      WideRat d_up = round_up_power(base, metric.d(i, j));
      WideRat w_ij(0);
      if (radius_val[i] > d_up) {
        w_ij = (radius_val[i] - d_up) / beta_w;
        cert.contributions[i].push_back({j, w_ij});
        if (open_mask[i]) {
          cert.s[j] = w_ij;
          ++open_contributors;
        }
      }
      WideRat cand = to_wide(metric.d(i, j)) + w_ij;
      if (!have || cand < best) {
        have = true;
        best = cand;
      }
    }
    if (open_contributors > 1) cert.ambiguous_s.push_back(j);
    cert.v[j] = best;
    cert.sum_v += best;
  }

  for (VertexId i = 0; i < n; ++i) {
    WideRat total(0);
    for (const auto& [j, w] : cert.contributions[i]) total += w;
    if (to_wide(costs.f[i]) > 0) {
      WideRat ratio = total / to_wide(costs.f[i]);
      if (ratio > cert.sigma) cert.sigma = ratio;
    }
  }
  return cert;
}

std::string DualCertificate::to_json() const {
  nlohmann::json j;
  j["beta"] = beta.str();
  j["eps"] = eps.str();
  j["sigma"] = sigma.get_str();
  j["sum_v"] = sum_v.get_str();
  auto& vj = j["v"] = nlohmann::json::array();
  for (const auto& x : v) vj.push_back(x.get_str());
  auto& sj = j["s"] = nlohmann::json::array();
  for (const auto& x : s) sj.push_back(x.get_str());
  auto& wj = j["w"] = nlohmann::json::array();
  for (VertexId i = 0; i < static_cast<VertexId>(contributions.size()); ++i)
    for (const auto& [client, w] : contributions[i])
      wj.push_back({{"i", i}, {"j", client}, {"w", w.get_str()}});
  return j.dump();
}

std::string CertReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok;
  j["sigma"] = sigma.get_str();
  j["violating_clients"] = violating_clients;
  auto& c = j["checks"] = nlohmann::json::array();
  for (const auto& chk : checks) c.push_back({{"name", chk.name}, {"ok", chk.ok}, {"detail", chk.detail}});
  return j.dump();
}

CertReport verify_certificate(const MetricOracle& metric, const CostVector& costs,
                              const FacilitySolution& sol, const DualCertificate& cert,
                              const Rat& eps, int slack_power) {
  const VertexId n = metric.n();
  CertReport report;
  report.sigma = cert.sigma;
  const WideRat base = 1 + to_wide(eps);
  const WideRat slack = 3 * pow_ratio(base, slack_power);
  const WideRat beta_w = to_wide(cert.beta);

  auto add_check = [&](const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
    report.ok = report.ok && ok;
  };

  // per-client: some open facility is within 3(1+eps)^c1 v_j - beta s_j
  {
    bool ok = true;
    for (VertexId j = 0; j < n; ++j) {
      WideRat d_open = to_wide(metric.nearest_in(j, sol.open));
      if (slack * cert.v[j] < d_open + beta_w * cert.s[j]) {
        ok = false;
        report.violating_clients.push_back(j);
      }
    }
    add_check("per_client", ok,
              ok ? "" : std::to_string(report.violating_clients.size()) + " clients violate");
  }

  // aggregate: C + 2 beta F <= 3(1+eps)^c1 sum_j v_j
  {
    WideRat lhs = to_wide(sol.connection_cost) + 2 * beta_w * to_wide(sol.opening_cost);
    WideRat rhs = slack * cert.sum_v;
    add_check("aggregate", lhs <= rhs,
              "C + 2bF = " + lhs.get_str() + " vs " + rhs.get_str());
  }

  // dual constraint v_j <= d(i,j) + w_ij for every pair
  {
    bool ok = true;
    std::vector<std::vector<WideRat>> w_dense(n, std::vector<WideRat>(n, WideRat(0)));
    for (VertexId i = 0; i < n; ++i)
      for (const auto& [j, w] : cert.contributions[i]) w_dense[i][j] = w;
    for (VertexId i = 0; i < n && ok; ++i)
      for (VertexId j = 0; j < n; ++j)
        if (cert.v[j] > to_wide(metric.d(i, j)) + w_dense[i][j]) {
          ok = false;
          break;
        }
    add_check("dual_constraint", ok, "");
  }

  // scaled feasibility: sum_j w_ij <= sigma f_i with the recorded sigma
  {
    bool ok = true;
    for (VertexId i = 0; i < n; ++i) {
      WideRat total(0);
      for (const auto& [j, w] : cert.contributions[i]) total += w;
      if (total > cert.sigma * to_wide(costs.f[i])) {
        ok = false;
        break;
      }
    }
    add_check("scaled_feasibility", ok, "sigma = " + cert.sigma.get_str());
  }

  add_check("s_uniqueness", cert.ambiguous_s.empty(),
            cert.ambiguous_s.empty()
                ? ""
                : std::to_string(cert.ambiguous_s.size()) + " clients contribute to several open facilities");

  return report;
}

}  // namespace kmclust
