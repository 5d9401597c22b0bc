#include "kmclust/report.hpp"

#include <sstream>

namespace kmclust {

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["problem"] = problem;
  j["instance"] = {{"digest", instance_digest}, {"n", n}, {"m", m}};
  j["params"] = {{"k", k},         {"sssp_mode", sssp_mode}, {"eps", eps},
                 {"beta", beta},   {"p", p},                 {"seed", seed},
                 {"scale", scale}};
  j["solution"] = solution;
  if (!radii_expo.is_null()) j["radii_expo"] = radii_expo;
  j["ledger"] = ledger;
  if (!verification.is_null()) j["verification"] = verification;
  return j.dump(2) + "\n";
}

RunReport RunReport::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.problem = j.at("problem").get<std::string>();
  r.instance_digest = j.at("instance").at("digest").get<std::uint64_t>();
  r.n = j.at("instance").at("n").get<VertexId>();
  r.m = j.at("instance").at("m").get<std::size_t>();
  const auto& params = j.at("params");
  r.k = params.at("k").get<MachineId>();
  r.sssp_mode = params.at("sssp_mode").get<std::string>();
  r.eps = params.at("eps").get<std::string>();
  r.beta = params.at("beta").get<std::string>();
  r.p = params.at("p").get<int>();
  r.seed = params.at("seed").get<std::uint64_t>();
  r.scale = params.at("scale").get<std::string>();
  r.solution = j.at("solution");
  if (j.contains("radii_expo")) r.radii_expo = j.at("radii_expo");
  r.ledger = j.at("ledger");
  if (j.contains("verification")) r.verification = j.at("verification");
  return r;
}

std::string bench_csv_header() { return "n,k,rounds,charged_rounds,cost,seed\n"; }

std::string bench_csv_row(VertexId n, MachineId k, const RoundLedger& ledger,
                          const std::string& cost, std::uint64_t seed) {
  std::ostringstream os;
  os << n << "," << k << "," << ledger.rounds << "," << ledger.charged_rounds << "," << cost
     << "," << seed << "\n";
  return os.str();
}

}  // namespace kmclust
