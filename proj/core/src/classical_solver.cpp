#include "rfs/classical_solver.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

namespace rfs {

BitString classical_fs(const SingleArgOracle& oracle, int n) {
  std::uint64_t acc = 0;
  for (int j = 1; j <= n; ++j) {
    const BitString probe = BitString::one_hot(j, n);
    int bit = oracle.apply(probe, 0);
    // discard ancilla: probe still holds 1_j
    assert(probe == BitString::one_hot(j, n));
    acc = (acc << 1) | static_cast<std::uint64_t>(bit);
  }
  return BitString(acc, n);
}

namespace {

struct RfsRun {
  const ITree& tree;
  CountedOracle f_oracle;
  std::vector<CountedOracle> g_oracles;  // index k-1 -> O_{g_k}
  bool memoize = false;
  std::map<std::pair<int, std::vector<std::uint64_t>>, BitString> secret_memo;

  // Realizes counted oracle access to f_k at the given arguments.
  int eval_level(int k, std::vector<BitString>& args) {
    const int l = tree.depth();
    if (k == l + 1) {
      return f_oracle.call(args);
    }
    const int width = tree.length(k + 1);
    BitString x_next = BitString::zeros(width);

    bool have_memo = false;
    if (memoize) {
      auto it = secret_memo.find({k, encode_args(args)});
      if (it != secret_memo.end()) {
        x_next = it->second;
        have_memo = true;
      }
    }
    if (!have_memo) {
      std::uint64_t acc = 0;
      for (int j = 1; j <= width; ++j) {
        const BitString probe = BitString::one_hot(j, width);
        args.push_back(probe);
        int bit = eval_level(k + 1, args);
        args.pop_back();
        // discard ancilla: probe still holds 1_j
        assert(probe == BitString::one_hot(j, width));
        acc = (acc << 1) | static_cast<std::uint64_t>(bit);
      }
      x_next = BitString(acc, width);
      if (memoize) secret_memo.emplace(std::make_pair(k, encode_args(args)), x_next);
    }

    args.push_back(x_next);
    int y = g_oracles[static_cast<std::size_t>(k - 1)].call(args);
    args.pop_back();
    return y;
  }
};

}  // namespace

int classical_rfs(const ITree& tree, const BitString& x1, QueryLedger& ledger, bool memoize) {
  if (x1.width() != tree.length(1)) {
    throw std::invalid_argument("classical_rfs: x1 width mismatch");
  }
  RfsRun run{tree, oracle_f(tree, ledger), {}, memoize, {}};
  for (int k = 1; k <= tree.depth(); ++k) {
    run.g_oracles.push_back(oracle_g(tree, k, ledger));
  }
  std::vector<BitString> args{x1};
  return run.eval_level(1, args);
}

int linear_g_shortcut(const FSTree& tree, const BitString& x1, QueryLedger& ledger) {
  if (tree.config().g_family != GFamily::LastArgParity) {
    throw std::invalid_argument("shortcut inapplicable: g_1 is not linear in its last argument");
  }
  if (x1.width() != tree.length(1)) {
    throw std::invalid_argument("linear_g_shortcut: x1 width mismatch");
  }
  // Parity over n_2 bits is x . x* with x* = 1...1, so f_1(x_1) = f_2(x_1, x*).
  const BitString x_star = BitString::ones(tree.length(2));
  CountedOracle f2 = oracle_f(tree, ledger);  // l = 1, so f_2 is the leaf oracle
  if (tree.depth() != 1) {
    throw std::invalid_argument("shortcut inapplicable: depth must be 1");
  }
  std::vector<BitString> args{x1, x_star};
  return f2.call(args);
}

std::uint64_t expected_classical_f_calls(const std::vector<int>& lengths) {
  std::uint64_t product = 1;
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    product *= static_cast<std::uint64_t>(lengths[i]);
  }
  return product;
}

std::uint64_t expected_classical_g_calls(const std::vector<int>& lengths, int k) {
  if (k < 1 || k + 1 > static_cast<int>(lengths.size())) {
    throw std::invalid_argument("expected_classical_g_calls: level out of range");
  }
  std::uint64_t product = 1;
  for (int i = 2; i <= k; ++i) {
    product *= static_cast<std::uint64_t>(lengths[static_cast<std::size_t>(i - 1)]);
  }
  return product;
}

}  // namespace rfs
