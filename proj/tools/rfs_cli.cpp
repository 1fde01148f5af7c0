// Command-line front end: generate instances, run and compare the solver
// tracks, run ablations, verify promises and bounds, and convert between the
// tree and RFS_h formulations.  Reports are versioned JSON; exit code 0 means
// every verdict in the report passed (or the command is report-only).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfs/classical_solver.hpp"
#include "rfs/conjugate.hpp"
#include "rfs/instance_io.hpp"
#include "rfs/quantum_solver.hpp"
#include "rfs/translate.hpp"

using json = nlohmann::ordered_json;
using rfs::BitString;
using rfs::FSTree;
using rfs::FSTreeConfig;
using rfs::GFamily;
using rfs::QueryLedger;

namespace {

constexpr int kReportFormatVersion = 1;
constexpr int kSweepWidthCap = 12;  // refuse x1 sweeps beyond 2^12 points

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  Report(std::string command, std::string out_path)
      : out_path_(std::move(out_path)), start_(std::chrono::steady_clock::now()) {
    body_["format_version"] = kReportFormatVersion;
    body_["command"] = std::move(command);
  }

  json& body() { return body_; }

  void add_verdict(std::string name, bool pass, std::string detail = "") {
    verdicts_.push_back({std::move(name), pass, std::move(detail)});
  }

  bool all_pass() const {
    for (const auto& v : verdicts_) {
      if (!v.pass) return false;
    }
    return true;
  }

  /// Writes the report and returns the process exit code.
  int finish(bool report_only = false) {
    json verdicts = json::array();
    for (const auto& v : verdicts_) {
      json entry;
      entry["name"] = v.name;
      entry["verdict"] = v.pass ? "PASS" : "FAIL";
      if (!v.detail.empty()) entry["detail"] = v.detail;
      verdicts.push_back(std::move(entry));
    }
    body_["verdicts"] = std::move(verdicts);
    body_["all_pass"] = all_pass();
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    body_["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    const std::string text = body_.dump(2) + "\n";
    if (out_path_.empty() || out_path_ == "-") {
      std::cout << text;
    } else {
      std::ofstream out(out_path_, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write report to " << out_path_ << "\n";
        return 2;
      }
      out << text;
    }
    return (report_only || all_pass()) ? 0 : 1;
  }

 private:
  std::string out_path_;
  json body_;
  std::vector<Verdict> verdicts_;
  std::chrono::steady_clock::time_point start_;
};

json ledger_json(const QueryLedger& ledger) {
  json arr = json::array();
  for (const auto& [key, count] : ledger.counts()) {
    json entry;
    entry["oracle"] = key.first;
    entry["level"] = key.second;
    entry["count"] = count;
    arr.push_back(std::move(entry));
  }
  return arr;
}

json expected_counts_json(const std::vector<int>& lengths) {
  const int depth = static_cast<int>(lengths.size()) - 1;
  json arr = json::array();
  json f;
  f["oracle"] = "f";
  f["level"] = depth + 1;
  f["classical"] = rfs::expected_classical_f_calls(lengths);
  f["quantum"] = 1ULL << depth;
  arr.push_back(std::move(f));
  for (int k = depth; k >= 1; --k) {
    json g;
    g["oracle"] = "g";
    g["level"] = k;
    g["classical"] = rfs::expected_classical_g_calls(lengths, k);
    g["quantum"] = 1ULL << (k - 1);
    arr.push_back(std::move(g));
  }
  return arr;
}

void describe_instance(json& body, const rfs::InstanceFile& file) {
  const FSTreeConfig& config = file.tree.config();
  body["instance_digest"] = rfs::instance_digest(file);
  body["kind"] = file.kind;
  body["lengths"] = config.lengths;
  body["depth"] = config.depth();
  body["g_family"] = rfs::to_string(config.g_family);
  body["seed"] = config.seed;
  if (file.x1) body["x1"] = file.x1->str();
}

std::vector<int> parse_lengths(const std::string& text) {
  std::vector<int> lengths;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      lengths.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--lengths", "expected a comma-separated list of integers");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return lengths;
}

/// x1 values the run sweeps: an explicit flag, the value pinned in the
/// instance file, or every possible value.
std::vector<BitString> x1_values(const rfs::InstanceFile& file, const std::string& x1_flag) {
  const int n1 = file.tree.length(1);
  if (!x1_flag.empty()) {
    BitString x1 = BitString::from_string(x1_flag);
    if (x1.width() != n1) {
      throw std::invalid_argument("--x1 width " + std::to_string(x1.width()) +
                                  " does not match the instance's first register (" +
                                  std::to_string(n1) + ")");
    }
    return {x1};
  }
  if (file.x1) return {*file.x1};
  if (n1 > kSweepWidthCap) {
    throw std::invalid_argument("refusing to sweep 2^" + std::to_string(n1) +
                                " values of x1; pass --x1");
  }
  std::vector<BitString> all;
  for (std::uint64_t v = 0; v < (1ULL << n1); ++v) all.emplace_back(v, n1);
  return all;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RFS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric RFS_SEED\n";
    }
  }
  return 0;
}

/// Bounded exhaustive promise verification.  Checks that every f_k is linear
/// in its last argument with coefficients s_{k-1}, and that f_k equals g_k at
/// the secret.  Returns a witness string on the first violation.
std::optional<std::string> verify_tree_promises(const rfs::ITree& tree, std::uint64_t budget,
                                                std::uint64_t& checks) {
  const int depth = tree.depth();
  std::vector<std::vector<BitString>> prefixes{{}};
  for (int k = 1; k <= depth; ++k) {
    std::vector<std::vector<BitString>> next;
    for (const auto& prefix : prefixes) {
      for (std::uint64_t v = 0; v < (1ULL << tree.length(k)); ++v) {
        auto extended = prefix;
        extended.emplace_back(v, tree.length(k));
        next.push_back(std::move(extended));
      }
    }
    prefixes = std::move(next);

    // Derivation promise: f_k(prefix) = g_k(prefix, s_k(prefix)).
    if (k <= depth) {
      for (const auto& prefix : prefixes) {
        if (++checks > budget) return std::nullopt;
        std::vector<BitString> with_secret = prefix;
        with_secret.push_back(tree.secret(k, prefix));
        if (tree.eval_f(k, prefix) != tree.eval_g(k, with_secret)) {
          std::string w = "derivation promise fails at level " + std::to_string(k) + ", prefix (";
          for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (i) w += ",";
            w += prefix[i].str();
          }
          return w + ")";
        }
      }
    }

    // Linearity promise: f_{k+1}(prefix, x) = s_k(prefix) . x for all x.
    const int w_next = tree.length(k + 1);
    for (const auto& prefix : prefixes) {
      const BitString s = tree.secret(k, prefix);
      for (std::uint64_t x = 0; x < (1ULL << w_next); ++x) {
        if (++checks > budget) return std::nullopt;
        std::vector<BitString> args = prefix;
        args.emplace_back(x, w_next);
        if (tree.eval_f(k + 1, args) != rfs::dot(s, args.back())) {
          std::string witness =
              "linearity promise fails at level " + std::to_string(k + 1) + ", prefix (";
          for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (i) witness += ",";
            witness += args[i].str();
          }
          return witness + "), argument " + args.back().str();
        }
      }
    }
  }
  return std::nullopt;
}

// --- solve ------------------------------------------------------------------

struct TrackOutcome {
  int answer = 0;
  json run;
  bool ok = true;
};

TrackOutcome run_classical(const FSTree& tree, const BitString& x1, bool memoize) {
  TrackOutcome out;
  QueryLedger ledger;
  out.answer = rfs::classical_rfs(tree, x1, ledger, memoize);
  std::vector<BitString> prefix{x1};
  const int truth = tree.eval_f(1, prefix);

  out.run["track"] = "classical";
  out.run["x1"] = x1.str();
  out.run["answer"] = out.answer;
  out.run["ledger"] = ledger_json(ledger);

  const bool correct = out.answer == truth;
  bool counts_ok = true;
  if (!memoize) {
    counts_ok = ledger.count("f", tree.depth() + 1) ==
                rfs::expected_classical_f_calls(tree.lengths());
    for (int k = 1; k <= tree.depth(); ++k) {
      counts_ok = counts_ok &&
                  ledger.count("g", k) == rfs::expected_classical_g_calls(tree.lengths(), k);
    }
  }
  out.run["answer_correct"] = correct;
  out.run["counts_exact"] = counts_ok;
  out.ok = correct && counts_ok;
  return out;
}

TrackOutcome run_quantum(const FSTree& tree, const BitString& x1, int qubit_cap) {
  TrackOutcome out;
  QueryLedger ledger;
  auto result = rfs::quantum_rfs(tree, x1, rfs::AblationPlan{}, ledger, qubit_cap);
  out.answer = result.answer;

  out.run["track"] = "quantum";
  out.run["x1"] = x1.str();
  out.run["answer"] = result.answer;
  out.run["success_probability"] = result.success_probability;
  out.run["ledger"] = ledger_json(ledger);

  const bool success = result.success_probability >= 1.0 - 1e-9;
  const bool counts_ok =
      ledger.count("Uf", tree.depth() + 1) == (1ULL << tree.depth());
  out.run["answer_correct"] = result.answer == result.correct_answer;
  out.run["success_ge_threshold"] = success;
  out.run["counts_exact"] = counts_ok;
  out.ok = success && counts_ok && result.answer == result.correct_answer;
  return out;
}

TrackOutcome run_kickback(const FSTree& tree, const BitString& x1) {
  TrackOutcome out;
  QueryLedger ledger;
  rfs::conjugate::Trace trace;
  auto outcome = rfs::conjugate::cp_rfs(tree, x1, 0, &ledger, &trace);

  out.run["track"] = "kickback";
  out.run["x1"] = x1.str();
  out.run["ledger"] = ledger_json(ledger);
  out.run["tokens_created"] = trace.tokens_created;
  out.run["tokens_cancelled"] = trace.tokens_cancelled;

  std::vector<BitString> prefix{x1};
  const int truth = tree.eval_f(1, prefix);
  if (std::holds_alternative<rfs::conjugate::DiscardError>(outcome)) {
    out.run["discard_error"] = std::get<rfs::conjugate::DiscardError>(outcome).str();
    out.ok = false;
    return out;
  }
  out.answer = std::get<int>(outcome);
  out.run["answer"] = out.answer;
  const bool correct = out.answer == truth;
  const bool tokens_balanced = trace.tokens_created == trace.tokens_cancelled;
  const std::string id = "F" + std::to_string(tree.depth() + 1);
  const bool counts_ok = ledger.count(id, tree.depth() + 1) == (1ULL << tree.depth());
  out.run["answer_correct"] = correct;
  out.run["tokens_balanced"] = tokens_balanced;
  out.run["counts_exact"] = counts_ok;
  out.ok = correct && tokens_balanced && counts_ok;
  return out;
}

int cmd_solve(const std::string& instance_path, std::string track, bool compare_all,
              const std::string& x1_flag, bool memoize, bool force,
              const std::string& out_path) {
  Report report("solve", out_path);
  rfs::InstanceFile file = rfs::load_instance(instance_path);
  describe_instance(report.body(), file);
  report.body()["expected_counts"] = expected_counts_json(file.tree.lengths());

  std::vector<std::string> tracks;
  if (compare_all) {
    tracks = {"classical", "quantum", "kickback"};
  } else {
    tracks = {track};
  }
  report.body()["tracks"] = tracks;

  const int qubit_cap = force ? 28 : rfs::StateVector::kDefaultQubitCap;
  const bool wants_quantum =
      compare_all || track == "quantum";
  if (wants_quantum) {
    const int qubits = rfs::quantum_rfs_qubits(file.tree, rfs::AblationPlan{});
    report.body()["qubits"] = qubits;
    if (qubits > qubit_cap) {
      std::cerr << "error: circuit needs " << qubits << " qubits, above the cap of " << qubit_cap
                << (force ? "" : " (use --force to raise it)") << "\n";
      return 2;
    }
  }

  json runs = json::array();
  std::map<std::string, bool> track_ok;
  for (const std::string& t : tracks) track_ok[t] = true;
  bool agree = true;
  for (const BitString& x1 : x1_values(file, x1_flag)) {
    std::optional<int> reference;
    for (const std::string& t : tracks) {
      TrackOutcome out;
      if (t == "classical") {
        out = run_classical(file.tree, x1, memoize);
      } else if (t == "quantum") {
        out = run_quantum(file.tree, x1, qubit_cap);
      } else {
        out = run_kickback(file.tree, x1);
      }
      track_ok[t] = track_ok[t] && out.ok;
      if (reference && *reference != out.answer) agree = false;
      reference = out.answer;
      runs.push_back(std::move(out.run));
    }
  }
  report.body()["runs"] = std::move(runs);

  for (const std::string& t : tracks) {
    report.add_verdict(t + "_track", track_ok[t], track_ok[t] ? "" : "see per-run fields");
  }
  if (tracks.size() > 1) {
    report.add_verdict("cross_track_agreement", agree,
                       agree ? "" : "tracks returned different answer bits");
  }
  return report.finish();
}

// --- ablate -----------------------------------------------------------------

int cmd_ablate(const std::string& instance_path, int level, const std::string& track,
               bool force, const std::string& out_path) {
  Report report("ablate", out_path);
  rfs::InstanceFile file = rfs::load_instance(instance_path);
  describe_instance(report.body(), file);
  report.body()["level"] = level;
  report.body()["track"] = track;

  if (level < 1 || level > file.tree.depth()) {
    std::cerr << "error: --level must be between 1 and the instance depth ("
              << file.tree.depth() << ")\n";
    return 2;
  }
  if (file.tree.trivializing()) {
    std::cerr << "warning: linear g: ablation may not fail\n";
    report.body()["warning"] = "linear g: ablation may not fail";
  }

  json runs = json::array();
  if (track == "quantum") {
    rfs::AblationPlan plan;
    plan.skip_uncompute_at_levels = {level};
    const int qubit_cap = force ? 28 : rfs::StateVector::kDefaultQubitCap;
    const int qubits = rfs::quantum_rfs_qubits(file.tree, plan);
    report.body()["qubits"] = qubits;
    if (qubits > qubit_cap) {
      std::cerr << "error: ablated circuit needs " << qubits << " qubits, above the cap of "
                << qubit_cap << (force ? "" : " (use --force to raise it)") << "\n";
      return 2;
    }
    double min_success = 1.0;
    for (const BitString& x1 : x1_values(file, "")) {
      QueryLedger ledger;
      auto result = rfs::quantum_rfs(file.tree, x1, plan, ledger, qubit_cap);
      json run;
      run["x1"] = x1.str();
      run["answer"] = result.answer;
      run["correct_answer"] = result.correct_answer;
      run["success_probability"] = result.success_probability;
      run["discard_notes"] = result.discard_notes;
      run["ledger"] = ledger_json(ledger);
      runs.push_back(std::move(run));
      min_success = std::min(min_success, result.success_probability);
    }
    report.body()["min_success_probability"] = min_success;
    report.body()["ablation_degrades_success"] = min_success < 1.0 - 1e-3;
  } else {
    int discard_errors = 0;
    for (const BitString& x1 : x1_values(file, "")) {
      QueryLedger ledger;
      rfs::conjugate::Trace trace;
      auto outcome = rfs::conjugate::cp_rfs(file.tree, x1, level, &ledger, &trace);
      json run;
      run["x1"] = x1.str();
      if (std::holds_alternative<rfs::conjugate::DiscardError>(outcome)) {
        const auto& err = std::get<rfs::conjugate::DiscardError>(outcome);
        run["discard_error"]["level"] = err.level;
        run["discard_error"]["register"] = err.register_name;
        run["discard_error"]["reason"] = err.reason;
        ++discard_errors;
      } else {
        run["answer"] = std::get<int>(outcome);
      }
      run["ledger"] = ledger_json(ledger);
      runs.push_back(std::move(run));
    }
    report.body()["discard_errors"] = discard_errors;
  }
  report.body()["runs"] = std::move(runs);
  return report.finish(/*report_only=*/true);
}

// --- verify -----------------------------------------------------------------

void verify_one_instance(const rfs::InstanceFile& file, const std::string& label,
                         Report& report) {
  const FSTree& tree = file.tree;
  std::uint64_t checks = 0;
  auto witness = verify_tree_promises(tree, 1ULL << 18, checks);
  report.add_verdict(label + ":promises", !witness.has_value(), witness.value_or(""));
  if (witness) return;

  // Cross-track equivalence and exact counts on the same instance.
  bool agree = true;
  bool counts_ok = true;
  bool success_ok = true;
  const int qubits = rfs::quantum_rfs_qubits(tree, rfs::AblationPlan{});
  const bool quantum_feasible = qubits <= rfs::StateVector::kDefaultQubitCap;
  for (const BitString& x1 : x1_values(file, "")) {
    std::vector<BitString> prefix{x1};
    const int truth = tree.eval_f(1, prefix);

    QueryLedger classical_ledger;
    agree = agree && rfs::classical_rfs(tree, x1, classical_ledger) == truth;
    counts_ok = counts_ok &&
                classical_ledger.count("f", tree.depth() + 1) ==
                    rfs::expected_classical_f_calls(tree.lengths());

    if (quantum_feasible) {
      QueryLedger quantum_ledger;
      auto result = rfs::quantum_rfs(tree, x1, rfs::AblationPlan{}, quantum_ledger);
      agree = agree && result.answer == truth;
      success_ok = success_ok && result.success_probability >= 1.0 - 1e-9;
      counts_ok = counts_ok &&
                  quantum_ledger.count("Uf", tree.depth() + 1) == (1ULL << tree.depth());
    }

    auto symbolic = rfs::conjugate::cp_rfs(tree, x1);
    agree = agree && std::holds_alternative<int>(symbolic) && std::get<int>(symbolic) == truth;
  }
  report.add_verdict(label + ":cross_track_agreement", agree);
  report.add_verdict(label + ":counts_exact", counts_ok);
  if (quantum_feasible) {
    report.add_verdict(label + ":quantum_success", success_ok);
  }
}

int cmd_verify(const std::string& instance_path, const std::string& suite,
               const std::string& out_path) {
  Report report("verify", out_path);

  if (!suite.empty()) {
    if (suite != "desk") {
      std::cerr << "error: unknown suite '" << suite << "' (expected 'desk')\n";
      return 2;
    }
    report.body()["suite"] = "desk";

    // Fresh seeds across families and shapes, plus the smallest legal case.
    const struct {
      std::vector<int> lengths;
      GFamily family;
      std::uint64_t seed;
    } desk[] = {
        {{1, 1}, GFamily::LastArgAnd, 101},
        {{2, 2}, GFamily::LastArgAnd, 102},
        {{2, 2}, GFamily::LastArgMajority, 103},
        {{2, 2, 2}, GFamily::LastArgAnd, 104},
        {{2, 2, 2}, GFamily::PrfRandom, 105},
        {{1, 2, 1, 2}, GFamily::PrfRandom, 106},
        {{3, 3}, GFamily::LastArgParity, 107},
    };
    for (const auto& d : desk) {
      FSTreeConfig config;
      config.lengths = d.lengths;
      config.g_family = d.family;
      config.seed = d.seed;
      rfs::InstanceFile file{FSTree::build(config), std::nullopt, "tree"};
      std::string label = rfs::to_string(d.family) + "/";
      for (std::size_t i = 0; i < d.lengths.size(); ++i) {
        label += (i ? "," : "") + std::to_string(d.lengths[i]);
      }
      verify_one_instance(file, label, report);

      // Parity instances also exercise the single-call shortcut.
      if (d.family == GFamily::LastArgParity) {
        bool shortcut_ok = true;
        for (const BitString& x1 : x1_values(file, "")) {
          std::vector<BitString> prefix{x1};
          QueryLedger ledger;
          shortcut_ok = shortcut_ok &&
                        rfs::linear_g_shortcut(file.tree, x1, ledger) == file.tree.eval_f(1, prefix) &&
                        ledger.total() == 1;
        }
        report.add_verdict(label + ":linear_g_shortcut", shortcut_ok);
      }
    }

    // Kickback identity on seeded trees.
    auto kickback = rfs::verify_kickback_identity(2, 2, 108, GFamily::LastArgAnd);
    report.add_verdict("kickback_identity", kickback.ok(),
                       kickback.ok() ? std::to_string(kickback.cases_checked) + " cases"
                                     : kickback.violations.front());
    return report.finish();
  }

  if (instance_path.empty()) {
    std::cerr << "error: pass an instance file or --suite desk\n";
    return 2;
  }
  rfs::InstanceFile file = rfs::load_instance(instance_path);
  describe_instance(report.body(), file);
  verify_one_instance(file, "instance", report);
  return report.finish();
}

// --- translate --------------------------------------------------------------

int cmd_translate(const std::string& instance_path, const std::string& to,
                  const std::string& out_path, const std::string& report_path) {
  Report report("translate", report_path);
  rfs::InstanceFile file = rfs::load_instance(instance_path);
  describe_instance(report.body(), file);
  report.body()["to"] = to;

  if (to == "aaronson") {
    if (file.tree.has_explicit_tables()) {
      std::cerr << "error: explicit-table instances cannot be written in RFS_h form "
                   "(the file format stores only the generator seed)\n";
      return 2;
    }
    rfs::AaronsonInstance converted;
    try {
      converted = rfs::to_aaronson(file.tree);
    } catch (const std::invalid_argument& err) {
      std::cerr << "error: " << err.what() << "\n";
      return 2;
    }
    // Oracle equivalence of the round trip at desk scale.
    rfs::ConvertedTree back = rfs::from_aaronson(converted);
    std::uint64_t checks = 0;
    auto witness = verify_tree_promises(back, 1ULL << 16, checks);
    bool equal = !witness.has_value();
    for (const BitString& x1 : equal ? x1_values(file, "") : std::vector<BitString>{}) {
      std::vector<BitString> prefix{x1};
      QueryLedger ledger;
      equal = equal && rfs::classical_rfs(back, x1, ledger) == file.tree.eval_f(1, prefix);
    }
    report.add_verdict("oracle_equivalence", equal, witness.value_or(""));

    rfs::InstanceFile converted_file{file.tree, file.x1, "aaronson"};
    report.body()["converted_digest"] = rfs::instance_digest(converted_file);
    if (!out_path.empty()) rfs::save_instance(converted_file, out_path);
  } else {
    rfs::InstanceFile converted_file{file.tree, file.x1, "tree"};
    report.body()["converted_digest"] = rfs::instance_digest(converted_file);
    report.add_verdict("oracle_equivalence", true, "same backing oracles");
    if (!out_path.empty()) rfs::save_instance(converted_file, out_path);
  }
  return report.finish();
}

// --- gen --------------------------------------------------------------------

int cmd_gen(const std::string& lengths_flag, const std::string& family_flag,
            std::uint64_t seed, const std::string& x1_flag, const std::string& out_path) {
  auto family = rfs::g_family_from_string(family_flag);
  if (!family) {
    std::cerr << "error: unknown g family '" << family_flag
              << "' (expected and|majority|parity|prf|const0)\n";
    return 2;
  }

  FSTreeConfig config;
  config.lengths = parse_lengths(lengths_flag);
  config.g_family = *family;
  config.seed = seed;

  FSTree tree = [&] {
    try {
      return FSTree::build(config);
    } catch (const std::invalid_argument& err) {
      std::cerr << "error: " << err.what() << "\n";
      std::exit(1);
    }
  }();

  if (tree.trivializing()) {
    std::cerr << "warning: parity g is linear; the instance is trivializing "
                 "(solvable in a single f_2 call)\n";
  }

  std::optional<BitString> x1;
  if (!x1_flag.empty()) {
    x1 = BitString::from_string(x1_flag);
    if (x1->width() != tree.length(1)) {
      std::cerr << "error: --x1 width does not match lengths[0]\n";
      return 2;
    }
  }

  rfs::InstanceFile file{std::move(tree), x1, "tree"};
  const std::string text = rfs::serialize_instance(file);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
    std::cerr << "wrote " << out_path << " (digest " << rfs::instance_digest(file) << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive Fourier Sampling workbench"};
  app.require_subcommand(1);

  // gen
  std::string gen_lengths, gen_family = "and", gen_x1, gen_out;
  std::uint64_t gen_seed = default_seed();
  auto* gen = app.add_subcommand("gen", "Generate a promise-consistent instance file");
  gen->add_option("--lengths", gen_lengths, "Comma-separated register widths n_1,...,n_{l+1}")
      ->required();
  gen->add_option("--g", gen_family, "Output function family: and|majority|parity|prf|const0");
  gen->add_option("--seed", gen_seed, "Generation seed (default: RFS_SEED or 0)");
  gen->add_option("--x1", gen_x1, "Pin a top-level input into the file");
  gen->add_option("--out,-o", gen_out, "Output path (default: stdout)");

  // solve
  std::string solve_instance, solve_track = "classical", solve_x1, solve_out;
  bool solve_compare_all = false, solve_memoize = false, solve_force = false;
  auto* solve = app.add_subcommand("solve", "Run a solver track on an instance");
  solve->add_option("instance", solve_instance, "Instance file")->required();
  solve->add_option("--track", solve_track, "classical|quantum|kickback")
      ->check(CLI::IsMember({"classical", "quantum", "kickback"}));
  solve->add_flag("--compare-all", solve_compare_all, "Run all three tracks and compare");
  solve->add_option("--x1", solve_x1, "Top-level input (default: sweep all)");
  solve->add_flag("--memoize", solve_memoize, "Memoized classical recursion");
  solve->add_flag("--force", solve_force, "Raise the qubit cap");
  solve->add_option("--out,-o", solve_out, "Report path (default: stdout)");

  // ablate
  std::string ablate_instance, ablate_track = "quantum", ablate_out;
  int ablate_level = 1;
  bool ablate_force = false;
  auto* ablate = app.add_subcommand("ablate", "Skip a level's uncomputation and report the damage");
  ablate->add_option("instance", ablate_instance, "Instance file")->required();
  ablate->add_option("--level", ablate_level, "Recursion level to ablate")->required();
  ablate->add_option("--track", ablate_track, "quantum|kickback")
      ->check(CLI::IsMember({"quantum", "kickback"}));
  ablate->add_flag("--force", ablate_force, "Raise the qubit cap");
  ablate->add_option("--out,-o", ablate_out, "Report path (default: stdout)");

  // verify
  std::string verify_instance, verify_suite, verify_out;
  auto* verify = app.add_subcommand("verify", "Verify promises, counts, and track agreement");
  verify->add_option("instance", verify_instance, "Instance file");
  verify->add_option("--suite", verify_suite, "Named suite to run (desk)");
  verify->add_option("--out,-o", verify_out, "Report path (default: stdout)");

  // translate
  std::string tr_instance, tr_to, tr_out, tr_report;
  auto* translate = app.add_subcommand("translate", "Convert between tree and RFS_h forms");
  translate->add_option("instance", tr_instance, "Instance file")->required();
  translate->add_option("--to", tr_to, "aaronson|tree")
      ->required()
      ->check(CLI::IsMember({"aaronson", "tree"}));
  translate->add_option("--out,-o", tr_out, "Converted instance path");
  translate->add_option("--report", tr_report, "Report path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_lengths, gen_family, gen_seed, gen_x1, gen_out);
    }
    if (solve->parsed()) {
      return cmd_solve(solve_instance, solve_track, solve_compare_all, solve_x1, solve_memoize,
                       solve_force, solve_out);
    }
    if (ablate->parsed()) {
      return cmd_ablate(ablate_instance, ablate_level, ablate_track, ablate_force, ablate_out);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_instance, verify_suite, verify_out);
    }
    if (translate->parsed()) {
      return cmd_translate(tr_instance, tr_to, tr_out, tr_report);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
