// Acceptance harness: nine end-to-end checks, one pass/fail line each.
// Exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rfs/classical_solver.hpp"
#include "rfs/conjugate.hpp"
#include "rfs/quantum_solver.hpp"
#include "rfs/translate.hpp"

using rfs::AblationPlan;
using rfs::BitString;
using rfs::FSTree;
using rfs::FSTreeConfig;
using rfs::GFamily;
using rfs::QueryLedger;

namespace {

int failures = 0;

void report(int criterion, const std::string& title, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, title.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

FSTree make_tree(std::vector<int> lengths, GFamily family, std::uint64_t seed) {
  FSTreeConfig config;
  config.lengths = std::move(lengths);
  config.g_family = family;
  config.seed = seed;
  return FSTree::build(config);
}

std::vector<BitString> all_values(int n) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (1ULL << n); ++v) out.emplace_back(v, n);
  return out;
}

// 1. Classical ledger equals the closed-form counts exactly.
void criterion_1() {
  const std::vector<std::vector<int>> shapes = {
      {2, 2}, {3, 2}, {2, 3}, {2, 2, 2}, {3, 2, 3}, {1, 3, 2}, {2, 2, 2, 2}, {1, 3, 2, 2}};
  bool pass = true;
  std::string detail;
  for (const auto& lengths : shapes) {
    const FSTree tree = make_tree(lengths, GFamily::PrfRandom, 41);
    for (const BitString& x1 : all_values(lengths.front())) {
      QueryLedger ledger;
      (void)rfs::classical_rfs(tree, x1, ledger);
      const int depth = tree.depth();
      bool ok = ledger.count("f", depth + 1) == rfs::expected_classical_f_calls(lengths);
      for (int k = 1; k <= depth; ++k) {
        ok = ok && ledger.count("g", k) == rfs::expected_classical_g_calls(lengths, k);
      }
      if (!ok && pass) {
        pass = false;
        detail = "count mismatch at depth " + std::to_string(depth);
      }
    }
  }
  report(1, "classical query count matches n_2...n_{l+1} exactly", pass, detail);
}

// 2. Quantum track: 2^l leaf-oracle calls, success >= 1 - 1e-9 for all x_1.
void criterion_2() {
  const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3, 3}, {2, 2, 2}, {1, 1, 1, 1}, {2, 2, 2, 2}};
  bool pass = true;
  std::string detail;
  for (const auto& lengths : shapes) {
    const FSTree tree = make_tree(lengths, GFamily::LastArgMajority, 42);
    if (rfs::quantum_rfs_qubits(tree, AblationPlan{}) > 20) continue;
    for (const BitString& x1 : all_values(lengths.front())) {
      QueryLedger ledger;
      auto result = rfs::quantum_rfs(tree, x1, AblationPlan{}, ledger);
      const bool ok = result.success_probability >= 1.0 - 1e-9 &&
                      result.answer == result.correct_answer &&
                      ledger.count("Uf", tree.depth() + 1) == (1ULL << tree.depth());
      if (!ok && pass) {
        pass = false;
        detail = "failure at x1=" + x1.str() +
                 ", success=" + std::to_string(result.success_probability);
      }
    }
  }
  report(2, "quantum track uses exactly 2^l oracle calls with success >= 1-1e-9", pass, detail);
}

// 3. Kickback identity, exhaustive at n = 2.
void criterion_3() {
  bool pass = true;
  std::string detail;
  std::uint64_t cases = 0;
  for (GFamily family : {GFamily::LastArgAnd, GFamily::LastArgMajority, GFamily::PrfRandom}) {
    for (std::uint64_t seed : {1ULL, 9ULL}) {
      auto r = rfs::verify_kickback_identity(2, 2, seed, family);
      cases += r.cases_checked;
      if (!r.ok() && pass) {
        pass = false;
        detail = r.violations.front();
      }
    }
  }
  if (pass) detail = std::to_string(cases) + " cases checked";
  report(3, "phase kickback identity holds exhaustively at n=2", pass, detail);
}

// 4. Fourier Sampling returns s with probability >= 1 - 1e-9, all s, n <= 4.
void criterion_4() {
  bool pass = true;
  std::string detail;
  for (int n = 1; n <= 4 && pass; ++n) {
    for (std::uint64_t sv = 0; sv < (1ULL << n); ++sv) {
      const BitString s(sv, n);
      QueryLedger ledger;
      auto dist =
          rfs::quantum_fs_distribution([&s](const BitString& x) { return rfs::dot(s, x); }, n,
                                       ledger);
      if (dist[sv] < 1.0 - 1e-9) {
        pass = false;
        detail = "n=" + std::to_string(n) + " s=" + s.str() +
                 " p=" + std::to_string(dist[sv]);
        break;
      }
    }
  }
  report(4, "Fourier Sampling recovers every linear secret with probability 1", pass, detail);
}

// 5. Uncomputation necessity: frozen nonlinear instances fail under ablation
// on both the simulated and the symbolic track.
void criterion_5() {
  const struct {
    GFamily family;
    std::uint64_t seed;
  } frozen[] = {
      {GFamily::LastArgAnd, 2},
      {GFamily::LastArgMajority, 2},
      {GFamily::PrfRandom, 0},
  };
  const int ablated_level = 2;
  bool pass = true;
  std::string detail;
  for (const auto& f : frozen) {
    const FSTree tree = make_tree({2, 2, 2}, f.family, f.seed);
    AblationPlan plan;
    plan.skip_uncompute_at_levels = {ablated_level};

    double min_success = 1.0;
    BitString worst = BitString::zeros(2);
    bool all_discard_errors = true;
    for (const BitString& x1 : all_values(2)) {
      QueryLedger ledger;
      auto result = rfs::quantum_rfs(tree, x1, plan, ledger);
      if (result.success_probability < min_success) {
        min_success = result.success_probability;
        worst = x1;
      }
      auto symbolic = rfs::conjugate::cp_rfs(tree, x1, ablated_level);
      all_discard_errors =
          all_discard_errors && std::holds_alternative<rfs::conjugate::DiscardError>(symbolic);
    }
    const bool ok = min_success < 1.0 - 1e-3 && all_discard_errors;
    detail += rfs::to_string(f.family) + "/seed" + std::to_string(f.seed) + ": min success " +
              std::to_string(min_success) + " at x1=" + worst.str() + "; ";
    pass = pass && ok;
  }
  report(5, "skipping uncomputation degrades success and trips the discard check", pass, detail);
}

// 6. Cross-track equivalence over the desk suite.
void criterion_6() {
  bool pass = true;
  std::string detail;
  const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 2, 2}, {1, 2, 1, 2}};
  for (GFamily family : {GFamily::LastArgAnd, GFamily::LastArgMajority, GFamily::PrfRandom}) {
    for (const auto& lengths : shapes) {
      for (std::uint64_t seed : {11ULL, 12ULL}) {
        const FSTree tree = make_tree(lengths, family, seed);
        for (const BitString& x1 : all_values(lengths.front())) {
          std::vector<BitString> prefix{x1};
          const int truth = tree.eval_f(1, prefix);

          QueryLedger cl;
          const int classical = rfs::classical_rfs(tree, x1, cl);
          QueryLedger ql;
          auto quantum = rfs::quantum_rfs(tree, x1, AblationPlan{}, ql);
          auto symbolic = rfs::conjugate::cp_rfs(tree, x1);

          const bool ok = classical == truth && quantum.answer == truth &&
                          std::holds_alternative<int>(symbolic) &&
                          std::get<int>(symbolic) == truth;
          if (!ok && pass) {
            pass = false;
            detail = rfs::to_string(family) + " seed " + std::to_string(seed) +
                     " x1=" + x1.str();
          }
        }
      }
    }
  }
  report(6, "classical, quantum, and conjugate-pair tracks agree on every answer bit", pass,
         detail);
}

// 7. Parity g: single-call shortcut.
void criterion_7() {
  bool pass = true;
  std::string detail;
  for (int n : {1, 2, 3, 4}) {
    const FSTree tree = make_tree({n, n}, GFamily::LastArgParity, 51);
    for (const BitString& x1 : all_values(n)) {
      std::vector<BitString> prefix{x1};
      QueryLedger ledger;
      const int fast = rfs::linear_g_shortcut(tree, x1, ledger);
      const bool ok = fast == tree.eval_f(1, prefix) && ledger.total() == 1 &&
                      ledger.count("f", 2) == 1;
      if (!ok && pass) {
        pass = false;
        detail = "n=" + std::to_string(n) + " x1=" + x1.str();
      }
    }
  }
  report(7, "parity-g instances solve in exactly one f_2 call", pass, detail);
}

// 8. RFS_h round trip at n = 2, h <= 2, plus solver agreement on converted
// instances.
void criterion_8() {
  bool pass = true;
  std::string detail;

  // tree -> RFS_h -> tree preserves every truth table.
  for (GFamily family : {GFamily::LastArgAnd, GFamily::LastArgMajority}) {
    const FSTree tree = make_tree({2, 2}, family, 61);
    rfs::ConvertedTree back = rfs::from_aaronson(rfs::to_aaronson(tree));
    for (const BitString& x1 : all_values(2)) {
      std::vector<BitString> prefix{x1};
      bool ok = back.secret(1, prefix) == tree.secret(1, prefix) &&
                back.eval_f(1, prefix) == tree.eval_f(1, prefix);
      for (const BitString& x2 : all_values(2)) {
        std::vector<BitString> args{x1, x2};
        ok = ok && back.eval_f(2, args) == tree.eval_f(2, args) &&
             back.eval_g(1, args) == tree.eval_g(1, args);
      }
      if (!ok && pass) {
        pass = false;
        detail = "tree->RFS_h->tree mismatch at x1=" + x1.str();
      }
    }
  }

  // RFS_h -> tree on a hand-written instance, then all three tracks.
  auto secret_of = [](const BitString& x1) {
    static const char* table[] = {"11", "10", "01", "00"};
    return BitString::from_string(table[x1.value()]);
  };
  rfs::AaronsonInstance instance;
  instance.h = 2;
  instance.n = 2;
  instance.A = [secret_of](std::span<const BitString> args) {
    return rfs::dot(secret_of(args[0]), args[1]);
  };
  instance.G = [](const BitString& v) { return v.bit(1) & v.bit(2); };
  rfs::ConvertedTree converted = rfs::from_aaronson(instance);
  for (const BitString& x1 : all_values(2)) {
    const int truth = instance.G(secret_of(x1));
    QueryLedger cl;
    const int classical = rfs::classical_rfs(converted, x1, cl);
    QueryLedger ql;
    auto quantum = rfs::quantum_rfs(converted, x1, AblationPlan{}, ql);
    auto symbolic = rfs::conjugate::cp_rfs(converted, x1);
    const bool ok = classical == truth && quantum.answer == truth &&
                    std::holds_alternative<int>(symbolic) && std::get<int>(symbolic) == truth;
    if (!ok && pass) {
      pass = false;
      detail = "RFS_h->tree solver mismatch at x1=" + x1.str();
    }
  }
  report(8, "RFS_h round trip preserves oracles and solver answers", pass, detail);
}

// 9. Spectrum: exact deltas for linear f, Parseval within 1e-12.
void criterion_9() {
  bool pass = true;
  std::string detail;
  for (int n = 1; n <= 4 && pass; ++n) {
    const std::uint64_t size = 1ULL << n;
    for (std::uint64_t sv = 0; sv < size; ++sv) {
      const BitString s(sv, n);
      std::vector<int> table(size);
      for (std::uint64_t x = 0; x < size; ++x) table[x] = rfs::dot(s, BitString(x, n));
      auto spec = rfs::sign_spectrum(table);
      for (std::uint64_t chi = 0; chi < size; ++chi) {
        if (spec.values[chi] != (chi == sv ? 1.0 : 0.0)) {
          pass = false;
          detail = "delta mismatch n=" + std::to_string(n) + " s=" + s.str();
        }
      }
    }
    // Arbitrary functions: everything at n <= 2, a seeded sample beyond.
    const std::uint64_t space = n <= 2 ? (1ULL << size) : 1024;
    for (std::uint64_t code = 0; code < space; ++code) {
      const std::uint64_t bits =
          n <= 2 ? code : rfs::detail::mix64(code * 0x9E3779B9ULL + static_cast<std::uint64_t>(n));
      std::vector<int> table(size);
      for (std::uint64_t x = 0; x < size; ++x) table[x] = static_cast<int>((bits >> x) & 1);
      if (std::abs(rfs::sign_spectrum(table).parseval_sum() - 1.0) > 1e-12) {
        pass = false;
        detail = "Parseval violation at n=" + std::to_string(n);
      }
    }
  }
  report(9, "sign spectra are exact deltas for linear f and Parseval holds", pass, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
