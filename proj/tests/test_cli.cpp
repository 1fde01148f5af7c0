#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef RFS_CLI_PATH
#error "RFS_CLI_PATH must point at the built CLI binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(RFS_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return "/tmp/rfs_cli_test_" + std::to_string(getpid()) + "_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json report_from(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("gen is deterministic and flags trivializing families") {
  const std::string a = temp_path("gen_a.json");
  const std::string b = temp_path("gen_b.json");
  auto first = run_cli("gen --lengths 2,2,2 --g and --seed 7 --out " + a);
  auto second = run_cli("gen --lengths 2,2,2 --g and --seed 7 --out " + b);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  auto parity = run_cli("gen --lengths 2,2 --g parity --seed 1 --out " + temp_path("par.json"));
  CHECK(parity.exit_code == 0);
  CHECK(parity.output.find("trivializing") != std::string::npos);

  auto bad = run_cli("gen --lengths 2,2 --g const0 --seed 0");
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("unsatisfiable") != std::string::npos);
}

TEST_CASE("seed resolution: flag beats environment") {
  const std::string flagged = temp_path("seed_flag.json");
  const std::string env_only = temp_path("seed_env.json");
  auto with_flag = run_cli("gen --lengths 2,2 --seed 9 --out " + flagged);
  CHECK(with_flag.exit_code == 0);
  // Environment variable supplies the default when no flag is given.
  const std::string command = "RFS_SEED=9 " + std::string(RFS_CLI_PATH) +
                              " gen --lengths 2,2 --out " + env_only + " 2>&1";
  CHECK(std::system(command.c_str()) == 0);
  CHECK(slurp(flagged) == slurp(env_only));
}

TEST_CASE("solve: classical counts and verdicts") {
  const std::string inst = temp_path("solve_inst.json");
  REQUIRE(run_cli("gen --lengths 2,2,2 --g and --seed 7 --out " + inst).exit_code == 0);
  const std::string out = temp_path("solve_report.json");
  auto solve = run_cli("solve " + inst + " --track classical --out " + out);
  CHECK(solve.exit_code == 0);

  json report = report_from(out);
  CHECK(report["format_version"] == 1);
  CHECK(report["all_pass"] == true);
  CHECK(report["depth"] == 2);
  // Sweeps all four x1 values by default.
  CHECK(report["runs"].size() == 4);
  for (const auto& run : report["runs"]) {
    CHECK(run["answer_correct"] == true);
    CHECK(run["counts_exact"] == true);
    bool found_f3 = false;
    for (const auto& entry : run["ledger"]) {
      if (entry["oracle"] == "f" && entry["level"] == 3) {
        CHECK(entry["count"] == 4);
        found_f3 = true;
      }
    }
    CHECK(found_f3);
  }
}

TEST_CASE("solve: report determinism modulo timing") {
  const std::string inst = temp_path("det_inst.json");
  REQUIRE(run_cli("gen --lengths 2,2 --g majority --seed 3 --out " + inst).exit_code == 0);
  const std::string out_a = temp_path("det_a.json");
  const std::string out_b = temp_path("det_b.json");
  REQUIRE(run_cli("solve " + inst + " --track quantum --out " + out_a).exit_code == 0);
  REQUIRE(run_cli("solve " + inst + " --track quantum --out " + out_b).exit_code == 0);
  json a = report_from(out_a);
  json b = report_from(out_b);
  a.erase("duration_ms");
  b.erase("duration_ms");
  CHECK(a == b);
}

TEST_CASE("solve --compare-all: three agreeing tracks") {
  const std::string inst = temp_path("cmp_inst.json");
  REQUIRE(run_cli("gen --lengths 2,2,2 --g prf --seed 5 --out " + inst).exit_code == 0);
  const std::string out = temp_path("cmp_report.json");
  auto solve = run_cli("solve " + inst + " --compare-all --out " + out);
  CHECK(solve.exit_code == 0);
  json report = report_from(out);
  CHECK(report["all_pass"] == true);
  CHECK(report["runs"].size() == 12);  // 4 x1 values, 3 tracks
  bool found_agreement = false;
  for (const auto& v : report["verdicts"]) {
    if (v["name"] == "cross_track_agreement") {
      CHECK(v["verdict"] == "PASS");
      found_agreement = true;
    }
  }
  CHECK(found_agreement);
}

TEST_CASE("ablate: quantum success degrades, kickback reports discard errors") {
  const std::string inst = temp_path("ab_inst.json");
  REQUIRE(run_cli("gen --lengths 2,2,2 --g and --seed 2 --out " + inst).exit_code == 0);

  const std::string qout = temp_path("ab_q.json");
  auto quantum = run_cli("ablate " + inst + " --level 2 --track quantum --out " + qout);
  CHECK(quantum.exit_code == 0);  // report-only command
  json qreport = report_from(qout);
  CHECK(qreport["min_success_probability"].get<double>() < 1.0 - 1e-3);
  CHECK(qreport["ablation_degrades_success"] == true);

  const std::string kout = temp_path("ab_k.json");
  auto kickback = run_cli("ablate " + inst + " --level 1 --track kickback --out " + kout);
  CHECK(kickback.exit_code == 0);
  json kreport = report_from(kout);
  CHECK(kreport["discard_errors"] == 4);
  const std::string reason =
      kreport["runs"][0]["discard_error"]["reason"].get<std::string>();
  CHECK((reason.find("unresolved kickback token") != std::string::npos ||
         reason.find("undefined") != std::string::npos));

  // Parity g: documented caveat.
  const std::string par = temp_path("ab_par.json");
  REQUIRE(run_cli("gen --lengths 2,2 --g parity --seed 1 --out " + par).exit_code == 0);
  auto warn = run_cli("ablate " + par + " --level 1 --track quantum --out /dev/null");
  CHECK(warn.output.find("linear g: ablation may not fail") != std::string::npos);
}

TEST_CASE("verify: desk suite passes, corrupted instances fail with a witness") {
  const std::string out = temp_path("desk.json");
  auto desk = run_cli("verify --suite desk --out " + out);
  CHECK(desk.exit_code == 0);
  CHECK(report_from(out)["all_pass"] == true);

  // Smallest legal instance.
  const std::string tiny = temp_path("tiny.json");
  REQUIRE(run_cli("gen --lengths 1,1 --g and --seed 0 --out " + tiny).exit_code == 0);
  CHECK(run_cli("verify " + tiny + " --out /dev/null").exit_code == 0);

  // Hand-corrupted explicit-table instance: s_2(1,0) breaks the linearity of
  // f_2 in x_2 (the consistent value would be s_1(1) & x_2 = 0 here).
  const std::string corrupt = temp_path("corrupt.json");
  {
    std::ofstream f(corrupt);
    f << R"({
  "format_version": 1,
  "kind": "tree",
  "g_family": "and",
  "seed": 0,
  "lengths": [1, 1, 1],
  "secrets": {
    "1": {"0": "1", "1": "1"},
    "2": {"0,0": "0", "0,1": "1", "1,0": "1", "1,1": "1"}
  }
})";
  }
  const std::string vout = temp_path("corrupt_report.json");
  auto verify = run_cli("verify " + corrupt + " --out " + vout);
  CHECK(verify.exit_code == 1);
  json vreport = report_from(vout);
  CHECK(vreport["all_pass"] == false);
  bool witnessed = false;
  for (const auto& v : vreport["verdicts"]) {
    if (v["verdict"] == "FAIL") {
      CHECK(v["detail"].get<std::string>().find("linearity promise fails") != std::string::npos);
      witnessed = true;
    }
  }
  CHECK(witnessed);
}

TEST_CASE("translate: conversions in both directions") {
  const std::string inst = temp_path("tr_inst.json");
  REQUIRE(run_cli("gen --lengths 2,2,2 --g and --seed 7 --out " + inst).exit_code == 0);

  const std::string converted = temp_path("tr_aaronson.json");
  const std::string report_path = temp_path("tr_report.json");
  auto to_a = run_cli("translate " + inst + " --to aaronson --out " + converted + " --report " +
                      report_path);
  CHECK(to_a.exit_code == 0);
  json report = report_from(report_path);
  CHECK(report["all_pass"] == true);
  json file = json::parse(slurp(converted));
  CHECK(file["kind"] == "aaronson");
  CHECK(file["h"] == 3);
  CHECK(file["n"] == 2);

  // The converted instance drives the solver tracks unchanged.
  CHECK(run_cli("solve " + converted + " --compare-all --out /dev/null").exit_code == 0);

  // And converts back to an identical tree file.
  const std::string back = temp_path("tr_back.json");
  auto to_t = run_cli("translate " + converted + " --to tree --out " + back +
                      " --report /dev/null");
  CHECK(to_t.exit_code == 0);
  CHECK(slurp(back) == slurp(inst));

  // Inexpressible trees are refused.
  const std::string prf = temp_path("tr_prf.json");
  REQUIRE(run_cli("gen --lengths 2,2 --g prf --seed 1 --out " + prf).exit_code == 0);
  auto refused = run_cli("translate " + prf + " --to aaronson --report /dev/null");
  CHECK(refused.exit_code == 2);
  CHECK(refused.output.find("last argument") != std::string::npos);
}

TEST_CASE("solve exits nonzero when a verdict fails") {
  // A corrupted instance makes the classical answer disagree with eval_f
  // through the promise-violating table, or at minimum breaks the counts; the
  // solve command must then exit 1.
  const std::string corrupt = temp_path("solve_corrupt.json");
  {
    std::ofstream f(corrupt);
    f << R"({
  "format_version": 1,
  "kind": "tree",
  "g_family": "and",
  "seed": 0,
  "lengths": [1, 1, 1],
  "secrets": {
    "1": {"0": "1", "1": "1"},
    "2": {"0,0": "0", "0,1": "1", "1,0": "1", "1,1": "1"}
  }
})";
  }
  auto solve = run_cli("solve " + corrupt + " --track quantum --out /dev/null");
  CHECK(solve.exit_code != 0);
}
