#include <doctest.h>

#include <cmath>

#include "rfs/classical_solver.hpp"
#include "rfs/quantum_solver.hpp"
#include "test_helpers.hpp"

using rfs::AblationPlan;
using rfs::BitString;
using rfs::FSTree;
using rfs::FSTreeConfig;
using rfs::GFamily;
using rfs::QueryLedger;

namespace {

FSTree make_tree(std::vector<int> lengths, GFamily family, std::uint64_t seed) {
  FSTreeConfig config;
  config.lengths = std::move(lengths);
  config.g_family = family;
  config.seed = seed;
  return FSTree::build(config);
}

}  // namespace

TEST_CASE("quantum_fs recovers every linear secret with one oracle call") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t sv = 0; sv < (1ULL << n); ++sv) {
      const BitString s(sv, n);
      QueryLedger ledger;
      const BitString got =
          rfs::quantum_fs([&s](const BitString& x) { return rfs::dot(s, x); }, n, ledger);
      CHECK(got == s);
      CHECK(ledger.total() == 1);
    }
  }
}

TEST_CASE("quantum_fs rejects non-linear oracles") {
  QueryLedger ledger;
  CHECK_THROWS_AS(rfs::quantum_fs([](const BitString& x) { return x.bit(1) & x.bit(2); }, 2,
                                  ledger),
                  std::runtime_error);
}

TEST_CASE("quantum_fs_distribution equals the squared sign spectrum") {
  // AND on two bits: spectrum (0.5, 0.5, 0.5, -0.5), squares all 0.25.
  QueryLedger ledger;
  auto dist = rfs::quantum_fs_distribution(
      [](const BitString& x) { return x.bit(1) & x.bit(2); }, 2, ledger);
  for (double p : dist) CHECK(p == doctest::Approx(0.25));

  // Arbitrary f, n = 3: cross-check against the classical transform.
  std::vector<int> table{0, 1, 1, 0, 1, 1, 0, 0};
  auto spec = rfs::sign_spectrum(table);
  QueryLedger ledger2;
  auto dist2 = rfs::quantum_fs_distribution(
      [&table](const BitString& x) { return table[x.value()]; }, 3, ledger2);
  for (std::uint64_t chi = 0; chi < 8; ++chi) {
    CHECK(dist2[chi] == doctest::Approx(spec.values[chi] * spec.values[chi]));
  }
}

TEST_CASE("quantum_rfs solves the hand instance deterministically") {
  const FSTree tree = rfs::testing::hand_instance();
  for (std::uint64_t x1v = 0; x1v < 4; ++x1v) {
    QueryLedger ledger;
    auto result = rfs::quantum_rfs(tree, BitString(x1v, 2), AblationPlan{}, ledger);
    CHECK(result.answer == result.correct_answer);
    CHECK(result.success_probability == doctest::Approx(1.0));
    CHECK(result.discard_notes.empty());
    CHECK(ledger.count("Uf", 2) == 2);  // 2^l with l = 1
    CHECK(ledger.count("Ug", 1) == 1);
  }
}

TEST_CASE("quantum_rfs is exhaustively correct at depth 2 and 3") {
  SUBCASE("depth 2 across families") {
    for (GFamily family : {GFamily::LastArgAnd, GFamily::LastArgMajority, GFamily::PrfRandom}) {
      const FSTree tree = make_tree({2, 2, 2}, family, 6);
      for (std::uint64_t x1v = 0; x1v < 4; ++x1v) {
        QueryLedger ledger;
        auto result = rfs::quantum_rfs(tree, BitString(x1v, 2), AblationPlan{}, ledger);
        CHECK(result.answer == result.correct_answer);
        CHECK(result.success_probability == doctest::Approx(1.0));
        CHECK(ledger.count("Uf", 3) == 4);  // 2^2
        CHECK(ledger.count("Ug", 2) == 2);  // 2^1
        CHECK(ledger.count("Ug", 1) == 1);  // 2^0
      }
    }
  }
  SUBCASE("depth 3, width 1") {
    const FSTree tree = make_tree({1, 1, 1, 1}, GFamily::PrfRandom, 13);
    for (std::uint64_t x1v = 0; x1v < 2; ++x1v) {
      QueryLedger ledger;
      auto result = rfs::quantum_rfs(tree, BitString(x1v, 1), AblationPlan{}, ledger);
      CHECK(result.answer == result.correct_answer);
      CHECK(result.success_probability == doctest::Approx(1.0));
      CHECK(ledger.count("Uf", 4) == 8);
      CHECK(ledger.count("Ug", 3) == 4);
      CHECK(ledger.count("Ug", 2) == 2);
      CHECK(ledger.count("Ug", 1) == 1);
    }
  }
}

TEST_CASE("quantum query counts are exponentially below the classical ones") {
  const std::vector<int> lengths{2, 2, 2, 2};
  const FSTree tree = make_tree(lengths, GFamily::LastArgAnd, 30);
  QueryLedger quantum_ledger, classical_ledger;
  (void)rfs::quantum_rfs(tree, BitString::from_string("01"), AblationPlan{}, quantum_ledger);
  (void)rfs::classical_rfs(tree, BitString::from_string("01"), classical_ledger);
  CHECK(quantum_ledger.count("Uf", 4) == 8);
  CHECK(classical_ledger.count("f", 4) == rfs::expected_classical_f_calls(lengths));
  CHECK(classical_ledger.count("f", 4) == 8);  // equal only because n_k = 2 = branching
  // Wider levels separate the two tracks.
  const std::vector<int> wide{2, 4, 4};
  const FSTree wide_tree = make_tree(wide, GFamily::PrfRandom, 9);
  QueryLedger ql, cl;
  (void)rfs::quantum_rfs(wide_tree, BitString::from_string("10"), AblationPlan{}, ql);
  (void)rfs::classical_rfs(wide_tree, BitString::from_string("10"), cl);
  CHECK(ql.count("Uf", 3) == 4);   // 2^l
  CHECK(cl.count("f", 3) == 16);   // n_2 n_3
}

TEST_CASE("qubit accounting") {
  const FSTree tree = make_tree({2, 2, 2}, GFamily::LastArgAnd, 0);
  CHECK(rfs::quantum_rfs_qubits(tree, AblationPlan{}) == 9);
  AblationPlan level2;
  level2.skip_uncompute_at_levels = {2};
  // Level 2 runs twice and needs fresh ancillas per invocation.
  CHECK(rfs::quantum_rfs_qubits(tree, level2) == 12);
}

TEST_CASE("ablation at level 1 leaves garbage but cannot flip the answer") {
  // The answer is already written into the target before the uncomputation
  // steps; skipping them only corrupts ancillas.
  for (GFamily family : {GFamily::LastArgAnd, GFamily::PrfRandom}) {
    for (std::uint64_t seed : {0ULL, 2ULL, 7ULL}) {
      const FSTree tree = make_tree({2, 2, 2}, family, seed);
      for (std::uint64_t x1v = 0; x1v < 4; ++x1v) {
        AblationPlan plan;
        plan.skip_uncompute_at_levels = {1};
        QueryLedger ledger;
        auto result = rfs::quantum_rfs(tree, BitString(x1v, 2), plan, ledger);
        CHECK(result.success_probability == doctest::Approx(1.0));
        CHECK(!result.discard_notes.empty());
      }
    }
  }
}

TEST_CASE("ablation at level 2 degrades success on frozen instances") {
  struct Frozen {
    GFamily family;
    std::uint64_t seed;
    std::uint64_t x1;
    double expected_success;
  };
  // Values measured once from the simulator and pinned.
  const Frozen cases[] = {
      {GFamily::LastArgAnd, 2, 0b00, 0.375},
      {GFamily::LastArgMajority, 2, 0b00, 0.375},
      {GFamily::PrfRandom, 0, 0b00, 0.5},
      {GFamily::LastArgAnd, 0, 0b01, 0.375},
  };
  for (const auto& c : cases) {
    const FSTree tree = make_tree({2, 2, 2}, c.family, c.seed);
    AblationPlan plan;
    plan.skip_uncompute_at_levels = {2};
    QueryLedger ledger;
    auto result = rfs::quantum_rfs(tree, BitString(c.x1, 2), plan, ledger);
    CHECK(result.success_probability == doctest::Approx(c.expected_success));
    CHECK(result.success_probability < 1.0 - 1e-6);
    CHECK(!result.discard_notes.empty());
    // Skipping the second U_f halves the leaf-oracle count.
    CHECK(ledger.count("Uf", 3) == 2);
  }
}

TEST_CASE("ablated discards throw when verification is demanded") {
  // An empty plan verifies every discard; corrupting the circuit is the only
  // way to trip it, so instead check the plan-validation errors.
  const FSTree tree = rfs::testing::hand_instance();
  AblationPlan bad;
  bad.skip_uncompute_at_levels = {5};
  QueryLedger ledger;
  CHECK_THROWS_AS(rfs::quantum_rfs(tree, BitString::from_string("00"), bad, ledger),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      rfs::quantum_rfs(tree, BitString::from_string("0"), AblationPlan{}, ledger),
      std::invalid_argument);
}

TEST_CASE("kickback identity holds exhaustively on seeded trees") {
  for (GFamily family : {GFamily::LastArgAnd, GFamily::PrfRandom}) {
    auto report = rfs::verify_kickback_identity(2, 2, 1, family);
    CHECK(report.ok());
    // k = 2: 4 params * 4 chi * 2 upsilon; k = 3: 16 * 4 * 2.
    CHECK(report.cases_checked == 160);
  }
  auto deep = rfs::verify_kickback_identity(1, 3, 5, GFamily::LastArgMajority);
  CHECK(deep.ok());
  CHECK(deep.cases_checked == 2 * 2 * 2 + 4 * 2 * 2 + 8 * 2 * 2);
}
