// Experiment harness: instance generation, algorithm runs, verification, and
// benchmark sweeps with machine-readable output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmclust/certificate.hpp"
#include "kmclust/facility.hpp"
#include "kmclust/generators.hpp"
#include "kmclust/oracles.hpp"
#include "kmclust/pcenter.hpp"
#include "kmclust/pmedian.hpp"
#include "kmclust/report.hpp"
#include "kmclust/rng.hpp"

using namespace kmclust;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

WeightedGraph load_graph(const std::string& path) {
  std::string text = read_file(path);
  return ends_with(path, ".json") ? read_graph_json(text) : read_edge_list(text);
}

CostVector load_costs(const std::string& path) {
  std::string text = read_file(path);
  return ends_with(path, ".json") ? read_costs_json(text) : read_costs(text);
}

struct RunArgs {
  std::string problem;
  std::string graph_path;
  std::string costs_path;
  MachineId k = 8;
  std::string eps = "1/2";
  std::string beta = "3/2";
  int p = 2;
  std::uint64_t seed = 1;
  std::string sssp_mode = "charged";
  std::string format = "json";
  std::string out;
  bool verify = false;
};

struct LoadedInstance {
  WeightedGraph graph;
  CostVector costs;
  Rat scale;
  std::uint64_t digest = 0;
};

LoadedInstance load_instance(const std::string& graph_path, const std::string& costs_path) {
  LoadedInstance inst;
  WeightedGraph g = load_graph(graph_path);
  CostVector costs;
  if (costs_path.empty()) {
    costs.f.assign(g.n, Rat{1});
  } else {
    costs = load_costs(costs_path);
  }
  inst.digest = instance_digest(g, costs);
  NormalizeResult norm = normalize_weights(g, costs);
  inst.graph = std::move(norm.graph);
  inst.costs = std::move(norm.costs);
  inst.scale = norm.scale;
  return inst;
}

// oracle-backed checks shared by `run --verify` and `verify`
nlohmann::json verify_run(const LoadedInstance& inst, const RunReport& report) {
  nlohmann::json out;
  out["checks"] = nlohmann::json::array();
  bool all_ok = true;
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    out["checks"].push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
    all_ok = all_ok && ok;
  };

  const WeightedGraph& g = inst.graph;
  if (g.n > MetricOracle::default_cap()) {
    add("oracle_cap", false, "instance exceeds the all-pairs oracle cap");
    out["ok"] = false;
    return out;
  }
  MetricOracle metric(g);
  const Rat eps = Rat::parse(report.eps);
  const WideRat one_eps = 1 + to_wide(eps);

  auto check_coverage = [&](const std::vector<VertexId>& centers,
                            const std::vector<VertexId>& assigned) {
    bool ok = !centers.empty();
    std::string detail;
    std::vector<char> is_center(g.n, 0);
    for (VertexId c : centers) is_center[c] = 1;
    for (VertexId v = 0; v < g.n && ok; ++v) {
      if (assigned[v] < 0 || assigned[v] >= g.n) {
        ok = false;
        detail = "assignment out of range";
        break;
      }
      if (!is_center[assigned[v]]) {
        ok = false;
        detail = "client " + std::to_string(v) + " assigned to a closed vertex";
        break;
      }
      WideRat got = to_wide(metric.d(v, assigned[v]));
      WideRat best = to_wide(metric.nearest_in(v, centers));
      if (got > one_eps * best) {
        ok = false;
        detail = "client " + std::to_string(v) + " assigned beyond (1+eps) of nearest center";
      }
    }
    add("coverage", ok, detail);
  };

  if (report.problem == "facloc") {
    auto sol = report.solution;
    std::vector<VertexId> open = sol.at("S").get<std::vector<VertexId>>();
    std::vector<VertexId> assigned(g.n);
    for (VertexId v = 0; v < g.n; ++v) assigned[v] = v;
    for (const auto& a : sol.at("assignment"))
      assigned[a.at("client").get<VertexId>()] = a.at("facility").get<VertexId>();
    check_coverage(open, assigned);

    Rat f_total{0};
    for (VertexId s : open) f_total += inst.costs.f[s];
    Rat c_total{0};
    for (const auto& a : sol.at("assignment")) {
      VertexId client = a.at("client").get<VertexId>();
      c_total += metric.d(client, assigned[client]);
    }
    bool costs_ok = f_total == Rat::parse(sol.at("F").get<std::string>());
    add("opening_cost", costs_ok, costs_ok ? "" : "reported F does not match the open set");
    WideRat c_rep = to_wide(Rat::parse(sol.at("C").get<std::string>()));
    bool conn_ok = to_wide(c_total) <= c_rep * one_eps && c_rep <= to_wide(c_total) * one_eps;
    add("connection_cost", conn_ok, "");

    if (!report.radii_expo.is_null()) {
      RadiusTable radii;
      radii.eps = eps;
      radii.expo = report.radii_expo.get<std::vector<long>>();
      const Rat beta = Rat::parse(report.beta);
      std::vector<Rat> exact = exact_radii(metric, inst.costs, beta);
      WideRat slack = pow_ratio(one_eps, 3);
      bool ok = true;
      for (VertexId v = 0; v < g.n && ok; ++v) {
        WideRat approx = radii.value(v);
        WideRat truth = to_wide(exact[v]);
        if (approx > slack * truth || truth > slack * approx) ok = false;
      }
      add("radius_sandwich", ok, "");

      DualCertificate cert = build_dual_certificate(metric, radii, inst.costs, beta, open);
      FacilitySolution fs;
      fs.open = open;
      fs.assigned_facility = assigned;
      fs.facility_host.assign(g.n, 0);
      fs.opening_cost = f_total;
      fs.connection_cost = c_total;
      fs.clients_of.assign(open.size(), {});
      CertReport cr = verify_certificate(metric, inst.costs, fs, cert, eps);
      add("certificate", cr.ok, cr.ok ? "sigma = " + cr.sigma.get_str() : cr.to_json());
      out["certificate"] = nlohmann::json::parse(cert.to_json());

      if (g.n <= 12) {
        BruteForceResult opt = brute_force_facloc(metric, inst.costs);
        WideRat ratio_cap = 3 * pow_ratio(one_eps, 10);
        WideRat cost = to_wide(f_total + c_total);
        bool ratio_ok = cost <= ratio_cap * to_wide(opt.cost);
        std::ostringstream os;
        os << "cost " << (f_total + c_total) << " vs optimal " << opt.cost;
        add("brute_force_ratio", ratio_ok, os.str());
      }
    }
  } else if (report.problem == "pmedian") {
    auto sol = report.solution;
    std::vector<VertexId> centers = sol.at("C").get<std::vector<VertexId>>();
    std::vector<VertexId> assigned(g.n);
    for (const auto& a : sol.at("assignment"))
      assigned[a.at("client").get<VertexId>()] = a.at("center").get<VertexId>();
    add("cardinality", static_cast<int>(centers.size()) == report.p, "");
    check_coverage(centers, assigned);
    if (g.n <= 15 && report.p <= 5) {
      BruteForceResult opt = brute_force_pmedian(metric, report.p);
      std::ostringstream os;
      os << "cost " << sol.at("cost").get<std::string>() << " vs optimal " << opt.cost;
      add("brute_force_reference", true, os.str());
    }
  } else if (report.problem == "pcenter") {
    auto sol = report.solution;
    std::vector<VertexId> centers = sol.at("C").get<std::vector<VertexId>>();
    std::vector<VertexId> assigned(g.n);
    for (const auto& a : sol.at("assignment"))
      assigned[a.at("client").get<VertexId>()] = a.at("center").get<VertexId>();
    add("cardinality", static_cast<int>(centers.size()) <= report.p, "");
    check_coverage(centers, assigned);
    Rat radius{0};
    for (VertexId v = 0; v < g.n; ++v) radius = max(radius, metric.d(v, assigned[v]));
    add("radius_consistent", radius == Rat::parse(sol.at("radius").get<std::string>()), "");
    if (g.n <= 15 && report.p <= 5) {
      BruteForceResult opt = brute_force_pcenter(metric, report.p);
      WideRat cap = 2 * pow_ratio(one_eps, 4) * to_wide(opt.cost);
      bool ok = to_wide(radius) <= cap;
      std::ostringstream os;
      os << "radius " << radius << " vs optimal " << opt.cost;
      add("brute_force_ratio", ok, os.str());
    }
  }

  out["ok"] = all_ok;
  return out;
}

int cmd_run(const RunArgs& args) {
  LoadedInstance inst = load_instance(args.graph_path, args.costs_path);
  const VertexId n = inst.graph.n;
  Rat eps = Rat::parse(args.eps);
  Rat beta = Rat::parse(args.beta);
  SsspMode mode = parse_sssp_mode(args.sssp_mode);

  PartitionMap part = random_partition(n, args.k, args.seed);
  Adjacency adj(inst.graph);
  Cluster cluster(args.k);
  RoundLedger ledger;
  EngineContext ctx = make_context(inst.graph, adj, part, mode, eps, cluster, ledger);

  RunReport report;
  report.problem = args.problem;
  report.instance_digest = inst.digest;
  report.n = n;
  report.m = inst.graph.edges.size();
  report.k = args.k;
  report.sssp_mode = args.sssp_mode;
  report.eps = eps.str();
  report.beta = beta.str();
  report.p = args.p;
  report.seed = args.seed;
  report.scale = inst.scale.str();

  std::string cost_str;
  if (args.problem == "facloc") {
    FacilityOptions fopts;
    fopts.beta = beta;
    FacilityRun run = mettu_plaxton_beta(ctx, inst.costs, args.seed, fopts);
    report.solution = nlohmann::json::parse(run.solution.to_json());
    report.solution["cost_original_units"] = (run.solution.total_cost() / inst.scale).str();
    report.radii_expo = run.radii.expo;
    cost_str = run.solution.total_cost().str();
  } else if (args.problem == "pmedian") {
    PMedianOptions mopts;
    mopts.beta = beta;
    MedianSolution sol = solve_pmedian(ctx, args.p, args.seed, mopts);
    report.solution = nlohmann::json::parse(sol.to_json());
    report.solution["cost_original_units"] = (sol.cost / inst.scale).str();
    cost_str = sol.cost.str();
  } else if (args.problem == "pcenter") {
    CenterSolution sol = solve_pcenter(ctx, args.p, args.seed);
    report.solution = nlohmann::json::parse(sol.to_json());
    report.solution["radius_original_units"] = (sol.radius / inst.scale).str();
    cost_str = sol.radius.str();
  } else {
    throw std::runtime_error("unknown problem: " + args.problem);
  }
  report.ledger = nlohmann::json::parse(ledger.to_json());

  int exit_code = 0;
  if (args.verify) {
    report.verification = verify_run(inst, report);
    if (!report.verification.at("ok").get<bool>()) exit_code = 1;
  }

  std::string text;
  if (args.format == "csv") {
    text = bench_csv_header() + bench_csv_row(n, args.k, ledger, cost_str, args.seed);
  } else {
    text = report.to_json();
  }
  if (args.out.empty() || args.out == "-")
    std::cout << text;
  else
    write_file(args.out, text);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clustering algorithms on a simulated k-machine cluster"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);

  auto* gen_random = gen->add_subcommand("random", "random connected instance");
  RandomInstanceSpec rspec;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance";
  bool gen_json = true;
  gen_random->add_option("--n", rspec.n, "vertex count")->required();
  gen_random->add_option("--density", rspec.density, "fraction of possible edges");
  gen_random->add_option("--wmin", rspec.weight_min, "min edge weight");
  gen_random->add_option("--wmax", rspec.weight_max, "max edge weight");
  gen_random->add_option("--fmin", rspec.cost_min, "min opening cost");
  gen_random->add_option("--fmax", rspec.cost_max, "max opening cost");
  gen_random->add_option("--seed", gen_seed, "rng seed");
  gen_random->add_option("--out", gen_out, "output path prefix");
  gen_random->add_flag("--json-mirror,!--no-json-mirror", gen_json, "also write JSON mirrors");

  auto* gen_lb = gen->add_subcommand("lowerbound", "adversarial two-hub family");
  int lb_b = 8, lb_c = 3;
  std::string lb_x, lb_y;
  gen_lb->add_option("--b", lb_b, "path count")->required();
  gen_lb->add_option("--c", lb_c, "heavy-weight exponent (L = n^c)");
  gen_lb->add_option("--x", lb_x, "bit string X (random if omitted)");
  gen_lb->add_option("--y", lb_y, "bit string Y");
  gen_lb->add_option("--seed", gen_seed, "rng seed for random bits");
  gen_lb->add_option("--out", gen_out, "output path prefix");
  gen_lb->add_flag("--json-mirror,!--no-json-mirror", gen_json, "also write JSON mirrors");

  // ---- run ----
  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run an algorithm and emit a report");
  run->add_option("problem", run_args.problem, "facloc | pmedian | pcenter")->required();
  run->add_option("--graph", run_args.graph_path, "edge-list or .json graph file")->required();
  run->add_option("--costs", run_args.costs_path, "cost file (defaults to all ones)");
  run->add_option("--k", run_args.k, "machine count");
  run->add_option("--eps", run_args.eps, "approximation parameter (rational)");
  run->add_option("--beta", run_args.beta, "opening-cost scaling in [1, 3/2]");
  run->add_option("--p", run_args.p, "number of centers (pmedian/pcenter)");
  run->add_option("--seed", run_args.seed, "master seed");
  run->add_option("--sssp-mode", run_args.sssp_mode, "distributed | charged");
  run->add_option("--format", run_args.format, "json | csv");
  run->add_option("--out", run_args.out, "output file ('-' for stdout)");
  run->add_flag("--verify", run_args.verify, "run oracle-backed checks and embed the outcome");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "sweep n and k, one CSV row per run");
  std::vector<VertexId> bench_n{1024, 2048};
  std::vector<MachineId> bench_k{8};
  std::string bench_eps = "1", bench_mode = "charged", bench_out = "-";
  std::string bench_problem = "facloc";
  double bench_avg_degree = 12.0;
  std::uint64_t bench_seed = 1;
  int bench_p = 8;
  bench->add_option("--problem", bench_problem, "facloc | pmedian | pcenter");
  bench->add_option("--n", bench_n, "vertex counts")->delimiter(',');
  bench->add_option("--k", bench_k, "machine counts")->delimiter(',');
  bench->add_option("--eps", bench_eps, "approximation parameter");
  bench->add_option("--p", bench_p, "centers for pmedian/pcenter");
  bench->add_option("--avg-degree", bench_avg_degree, "average degree of the sparse instances");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--sssp-mode", bench_mode, "distributed | charged");
  bench->add_option("--out", bench_out, "CSV file ('-' for stdout)");

  // ---- verify ----
  std::string verify_report_path, verify_graph, verify_costs;
  auto* verify = app.add_subcommand("verify", "check a run report against the oracles");
  verify->add_option("--report", verify_report_path, "report JSON file")->required();
  verify->add_option("--graph", verify_graph, "graph file")->required();
  verify->add_option("--costs", verify_costs, "cost file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_random->parsed()) {
      RandomInstance inst = gen_random_instance(rspec, gen_seed);
      write_file(gen_out + ".graph", write_edge_list(inst.graph));
      write_file(gen_out + ".costs", write_costs(inst.costs));
      if (gen_json) {
        write_file(gen_out + ".graph.json", write_graph_json(inst.graph));
        write_file(gen_out + ".costs.json", write_costs_json(inst.costs));
      }
      std::cout << "wrote " << gen_out << ".graph (" << inst.graph.n << " vertices, "
                << inst.graph.edges.size() << " edges)\n";
      return 0;
    }
    if (gen_lb->parsed()) {
      LowerBoundInstance inst;
      if (!lb_x.empty() || !lb_y.empty()) {
        auto parse_bits = [](const std::string& s) {
          std::vector<int> bits;
          for (char ch : s) bits.push_back(ch == '1' ? 1 : 0);
          return bits;
        };
        inst = gen_lower_bound_instance(lb_b, lb_c, parse_bits(lb_x), parse_bits(lb_y));
      } else {
        inst = gen_lower_bound_instance_random(lb_b, lb_c, gen_seed);
      }
      validate_lower_bound_structure(inst);
      write_file(gen_out + ".graph", write_edge_list(inst.graph));
      write_file(gen_out + ".costs", write_costs(inst.costs));
      if (gen_json) {
        write_file(gen_out + ".graph.json", write_graph_json(inst.graph));
        write_file(gen_out + ".costs.json", write_costs_json(inst.costs));
      }
      std::cout << "wrote " << gen_out << ".graph (" << inst.graph.n << " vertices, "
                << inst.graph.edges.size() << " edges)\n";
      return 0;
    }
    if (run->parsed()) return cmd_run(run_args);
    if (bench->parsed()) {
      std::ostringstream csv;
      csv << bench_csv_header();
      for (VertexId n : bench_n) {
        for (MachineId k : bench_k) {
          RandomInstanceSpec spec;
          spec.n = n;
          spec.density = std::min(1.0, bench_avg_degree / std::max(1, n - 1));
          std::uint64_t inst_seed =
              derive_seed(bench_seed, "bench.instance", static_cast<std::uint64_t>(n));
          RandomInstance inst = gen_random_instance(spec, inst_seed);
          NormalizeResult norm = normalize_weights(inst.graph, inst.costs);

          PartitionMap part = random_partition(n, k, bench_seed);
          Adjacency adj(norm.graph);
          Cluster cluster(k);
          RoundLedger ledger;
          EngineContext ctx = make_context(norm.graph, adj, part, parse_sssp_mode(bench_mode),
                                           Rat::parse(bench_eps), cluster, ledger);
          std::string cost;
          if (bench_problem == "facloc") {
            FacilityRun fr = mettu_plaxton_beta(ctx, norm.costs, bench_seed, {});
            cost = fr.solution.total_cost().str();
          } else if (bench_problem == "pmedian") {
            MedianSolution sol = solve_pmedian(ctx, bench_p, bench_seed, {});
            cost = sol.cost.str();
          } else {
            CenterSolution sol = solve_pcenter(ctx, bench_p, bench_seed);
            cost = sol.radius.str();
          }
          csv << bench_csv_row(n, k, ledger, cost, bench_seed);
        }
      }
      if (bench_out.empty() || bench_out == "-")
        std::cout << csv.str();
      else
        write_file(bench_out, csv.str());
      return 0;
    }
    if (verify->parsed()) {
      RunReport report = RunReport::from_json(read_file(verify_report_path));
      LoadedInstance inst = load_instance(verify_graph, verify_costs);
      if (inst.digest != report.instance_digest)
        std::cerr << "warning: instance digest does not match the report\n";
      nlohmann::json result = verify_run(inst, report);
      std::cout << result.dump(2) << "\n";
      return result.at("ok").get<bool>() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
