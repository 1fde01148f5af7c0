#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "rfs/bitmath.hpp"
#include "rfs/instance.hpp"
#include "rfs/ledger.hpp"

namespace rfs {

/// Counted single-argument reversible oracle (x, y) -> (x, y + f(x)).
class SingleArgOracle {
 public:
  using Fn = std::function<int(const BitString&)>;

  SingleArgOracle(std::string name, int level, Fn fn, QueryLedger* ledger)
      : name_(std::move(name)), level_(level), fn_(std::move(fn)), ledger_(ledger) {}

  int apply(const BitString& x, int y) const {
    if (ledger_) ledger_->record(name_, level_);
    return y ^ fn_(x);
  }

 private:
  std::string name_;
  int level_;
  Fn fn_;
  QueryLedger* ledger_;
};

/// Bit-by-bit classical Fourier Sampling: probes 1_j for j = 1..n and
/// accumulates (s)_j into a zero-initialized target.  Exactly n oracle calls.
BitString classical_fs(const SingleArgOracle& oracle, int n);

/// Recursive classical solver.  Depth-first, j ascending; each probe pays the
/// full recursive cost so the ledger reproduces the closed-form counts
/// n_2...n_{l+1} for f_{l+1} and n_2...n_k for g_k.  The memoized mode caches
/// secrets across sibling probes and is excluded from bound verification.
int classical_rfs(const ITree& tree, const BitString& x1, QueryLedger& ledger,
                  bool memoize = false);

/// Single-call solution for trees whose g_1 is parity of the last argument:
/// f_1(x_1) = f_2(x_1, x*) with x* the all-ones coefficient string.
int linear_g_shortcut(const FSTree& tree, const BitString& x1, QueryLedger& ledger);

/// Closed-form query counts for the non-memoized classical recursion.
std::uint64_t expected_classical_f_calls(const std::vector<int>& lengths);
std::uint64_t expected_classical_g_calls(const std::vector<int>& lengths, int k);

}  // namespace rfs
