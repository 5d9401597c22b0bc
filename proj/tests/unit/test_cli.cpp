#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CmdResult {
  int exit_code;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(KMCLUST_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) output.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string tmp_prefix(const std::string& tag) { return "/tmp/kmclust_test_" + tag; }

}  // namespace

TEST_CASE("gen random is byte-identical across reruns") {
  std::string p1 = tmp_prefix("gen_a"), p2 = tmp_prefix("gen_b");
  CHECK(run_cli("gen random --n 40 --density 0.2 --seed 11 --out " + p1).exit_code == 0);
  CHECK(run_cli("gen random --n 40 --density 0.2 --seed 11 --out " + p2).exit_code == 0);
  CHECK(slurp(p1 + ".graph") == slurp(p2 + ".graph"));
  CHECK(slurp(p1 + ".costs") == slurp(p2 + ".costs"));
  CHECK(slurp(p1 + ".graph.json") == slurp(p2 + ".graph.json"));
}

TEST_CASE("gen lowerbound writes the documented shape") {
  std::string p = tmp_prefix("lb");
  auto res = run_cli("gen lowerbound --b 8 --c 3 --seed 4 --out " + p);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("18 vertices") != std::string::npos);
  std::istringstream head(slurp(p + ".graph"));
  int n, m;
  head >> n >> m;
  CHECK(n == 18);
  CHECK(m == 24);
}

TEST_CASE("run emits identical json for identical flags") {
  std::string p = tmp_prefix("det");
  run_cli("gen random --n 24 --density 0.3 --seed 7 --out " + p);
  std::string flags = "run facloc --graph " + p + ".graph --costs " + p +
                      ".costs --k 4 --eps 1/2 --seed 5";
  auto a = run_cli(flags);
  auto b = run_cli(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  auto j = nlohmann::json::parse(a.output);
  CHECK(j.at("ledger").contains("charged_rounds"));
  CHECK(j.at("problem") == "facloc");
}

TEST_CASE("single-vertex facility instance costs exactly f") {
  std::string p = tmp_prefix("single");
  std::ofstream(p + ".graph") << "1 0\n";
  std::ofstream(p + ".costs") << "9/2\n";
  auto res = run_cli("run facloc --graph " + p + ".graph --costs " + p + ".costs --k 1 --seed 2");
  CHECK(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("solution").at("F") == "9/2");
  CHECK(j.at("solution").at("C") == "0");
}

TEST_CASE("pcenter with p = n reports radius zero") {
  std::string p = tmp_prefix("pcn");
  run_cli("gen random --n 10 --density 0.4 --seed 3 --out " + p);
  auto res = run_cli("run pcenter --graph " + p + ".graph --p 10 --k 2 --seed 1");
  CHECK(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("solution").at("radius") == "0");
}

TEST_CASE("bench emits the documented csv contract") {
  auto res = run_cli("bench --problem facloc --n 48,64 --k 2 --eps 1 --seed 5");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,k,rounds,charged_rounds,cost,seed");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 2);
  CHECK(res.output.find("48,2,") != std::string::npos);
  CHECK(res.output.find("64,2,") != std::string::npos);
}

TEST_CASE("doubling k halves the charged rounds at fixed n") {
  auto res = run_cli("bench --problem facloc --n 256 --k 4,8 --eps 1 --seed 9");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string header, row4, row8;
  std::getline(lines, header);
  std::getline(lines, row4);
  std::getline(lines, row8);
  auto charged = [](const std::string& row) {
    std::istringstream is(row);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(is, field, ',');
    return std::stoll(field);
  };
  long long c4 = charged(row4), c8 = charged(row8);
  CHECK(c4 == 2 * c8);  // identical call counts, n/k exactly halves
}

TEST_CASE("verify passes a sound run and flags a corrupted one") {
  std::string p = tmp_prefix("verify");
  run_cli("gen random --n 10 --density 0.45 --seed 21 --out " + p);
  std::string report_path = p + ".report.json";
  auto run_res = run_cli("run facloc --graph " + p + ".graph --costs " + p +
                         ".costs --k 3 --eps 1/4 --seed 6 --out " + report_path);
  CHECK(run_res.exit_code == 0);
  auto ok = run_cli("verify --report " + report_path + " --graph " + p + ".graph --costs " + p +
                    ".costs");
  CHECK(ok.exit_code == 0);
  CHECK(nlohmann::json::parse(ok.output).at("ok") == true);

  // reassign one client to a far-away facility
  auto j = nlohmann::json::parse(slurp(report_path));
  auto& assignment = j["solution"]["assignment"];
  REQUIRE(!assignment.empty());
  auto open = j["solution"]["S"].get<std::vector<int>>();
  int client = assignment[0]["client"].get<int>();
  int far = -1;
  for (int v = 0; v < j["instance"]["n"].get<int>(); ++v) {
    bool is_open = false;
    for (int s : open) is_open = is_open || (s == v);
    if (!is_open && v != client) far = v;
  }
  REQUIRE(far >= 0);
  assignment[0]["facility"] = far;  // a closed vertex: coverage must fail
  std::ofstream(report_path) << j.dump();
  auto bad = run_cli("verify --report " + report_path + " --graph " + p + ".graph --costs " + p +
                     ".costs");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("runs in csv format produce a single data row") {
  std::string p = tmp_prefix("csvrun");
  run_cli("gen random --n 16 --density 0.35 --seed 2 --out " + p);
  auto res = run_cli("run pcenter --graph " + p + ".graph --p 2 --k 2 --seed 3 --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("n,k,rounds", 0) == 0);
}
