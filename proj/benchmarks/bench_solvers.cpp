#include <benchmark/benchmark.h>

#include "rfs/classical_solver.hpp"
#include "rfs/conjugate.hpp"
#include "rfs/quantum_solver.hpp"

namespace {

rfs::FSTree make_tree(std::vector<int> lengths, rfs::GFamily family, std::uint64_t seed) {
  rfs::FSTreeConfig config;
  config.lengths = std::move(lengths);
  config.g_family = family;
  config.seed = seed;
  return rfs::FSTree::build(config);
}

void BM_ClassicalRfs(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  std::vector<int> lengths(static_cast<std::size_t>(depth) + 1, 2);
  const rfs::FSTree tree = make_tree(lengths, rfs::GFamily::PrfRandom, 1);
  const rfs::BitString x1(1, 2);
  for (auto _ : state) {
    rfs::QueryLedger ledger;
    benchmark::DoNotOptimize(rfs::classical_rfs(tree, x1, ledger));
  }
}
BENCHMARK(BM_ClassicalRfs)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_ClassicalRfsMemoized(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  std::vector<int> lengths(static_cast<std::size_t>(depth) + 1, 2);
  const rfs::FSTree tree = make_tree(lengths, rfs::GFamily::PrfRandom, 1);
  const rfs::BitString x1(1, 2);
  for (auto _ : state) {
    rfs::QueryLedger ledger;
    benchmark::DoNotOptimize(rfs::classical_rfs(tree, x1, ledger, /*memoize=*/true));
  }
}
BENCHMARK(BM_ClassicalRfsMemoized)->Arg(2)->Arg(3)->Arg(4);

void BM_QuantumRfs(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  std::vector<int> lengths(static_cast<std::size_t>(depth) + 1, 2);
  const rfs::FSTree tree = make_tree(lengths, rfs::GFamily::LastArgAnd, 1);
  const rfs::BitString x1(1, 2);
  for (auto _ : state) {
    rfs::QueryLedger ledger;
    benchmark::DoNotOptimize(rfs::quantum_rfs(tree, x1, rfs::AblationPlan{}, ledger));
  }
}
BENCHMARK(BM_QuantumRfs)->Arg(1)->Arg(2)->Arg(3);

void BM_ConjugateRfs(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  std::vector<int> lengths(static_cast<std::size_t>(depth) + 1, 2);
  const rfs::FSTree tree = make_tree(lengths, rfs::GFamily::PrfRandom, 1);
  const rfs::BitString x1(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfs::conjugate::cp_rfs(tree, x1));
  }
}
BENCHMARK(BM_ConjugateRfs)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_SignSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> table(1ULL << n);
  for (std::size_t x = 0; x < table.size(); ++x) {
    table[x] = static_cast<int>(rfs::detail::mix64(x) & 1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfs::sign_spectrum(table));
  }
}
BENCHMARK(BM_SignSpectrum)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
