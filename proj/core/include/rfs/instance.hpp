#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfs/bitmath.hpp"
#include "rfs/ledger.hpp"

namespace rfs {

/// Output-function family for the g_k sequence.  The last-arg families depend
/// only on the candidate secret; the PRF family exercises full-argument g_k.
/// ConstZero is degenerate (never surjective) and exists to exercise the
/// unsatisfiable-promise path.
enum class GFamily {
  LastArgAnd,
  LastArgMajority,
  LastArgParity,
  PrfRandom,
  ConstZero,
};

std::string to_string(GFamily family);
std::optional<GFamily> g_family_from_string(std::string_view name);

/// Parity g collapses the recursion to a single f_2 call.
inline bool is_trivializing(GFamily family) { return family == GFamily::LastArgParity; }

struct FSTreeConfig {
  std::vector<int> lengths;  // n_1 .. n_{l+1}
  GFamily g_family = GFamily::LastArgAnd;
  std::uint64_t seed = 0;

  int depth() const { return static_cast<int>(lengths.size()) - 1; }
  void validate() const;
};

namespace detail {

/// Fixed portable 64-bit keyed mix (splitmix/murmur-style finalizer chain).
/// Bit-exact across platforms; not cryptographic.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

std::uint64_t prf(std::uint64_t seed, std::span<const std::uint64_t> words);

}  // namespace detail

/// Oracle-level view of a Fourier Sampling tree: enough surface to drive any
/// of the solver tracks.  eval_g takes k+1 arguments (x_1..x_k, candidate).
class ITree {
 public:
  virtual ~ITree() = default;

  virtual const std::vector<int>& lengths() const = 0;
  virtual int eval_f(int k, std::span<const BitString> args) const = 0;
  virtual int eval_g(int k, std::span<const BitString> args) const = 0;
  virtual BitString secret(int k, std::span<const BitString> prefix) const = 0;

  int depth() const { return static_cast<int>(lengths().size()) - 1; }
  int length(int k) const;  // n_k, 1-based

  void check_args(int k, std::span<const BitString> args) const;
};

/// A promise-consistent RFS instance.  Secrets are evaluated lazily and
/// deterministically from the seed: s_1 is drawn freely, and s_k for k >= 2 is
/// drawn from the g_k-preimage of s_{k-1}(x_1..x_{k-1}).x_k so that both tree
/// promises hold by construction.  An explicit-table mode exists for
/// hand-checkable instances.
class FSTree final : public ITree {
 public:
  // Secret tables: per level k, encoded prefix values (x_1..x_k) -> s_k.
  using SecretTable = std::map<std::vector<std::uint64_t>, BitString>;
  using SecretTables = std::map<int, SecretTable>;

  static FSTree build(const FSTreeConfig& config);
  static FSTree from_tables(const FSTreeConfig& config, SecretTables tables);

  const FSTreeConfig& config() const { return config_; }
  const std::vector<int>& lengths() const override { return config_.lengths; }
  bool trivializing() const { return is_trivializing(config_.g_family); }
  bool has_explicit_tables() const { return explicit_tables_.has_value(); }
  const SecretTables& tables() const;

  BitString secret(int k, std::span<const BitString> prefix) const override;
  int eval_g(int k, std::span<const BitString> args) const override;
  int eval_f(int k, std::span<const BitString> args) const override;

 private:
  explicit FSTree(FSTreeConfig config) : config_(std::move(config)) {}

  int g_of_candidate(int k, std::span<const BitString> xs, const BitString& candidate) const;
  void check_surjective() const;

  FSTreeConfig config_;
  std::optional<SecretTables> explicit_tables_;
  mutable std::map<std::pair<int, std::vector<std::uint64_t>>, BitString> secret_cache_;
};

/// Classical reversible oracle O(args, y) = (args, y + fn(args)); every
/// invocation ticks the ledger.
class CountedOracle {
 public:
  using Fn = std::function<int(std::span<const BitString>)>;

  CountedOracle(std::string name, int level, Fn fn, QueryLedger* ledger)
      : name_(std::move(name)), level_(level), fn_(std::move(fn)), ledger_(ledger) {}

  int apply(std::span<const BitString> args, int y) const {
    if (ledger_) ledger_->record(name_, level_);
    return y ^ fn_(args);
  }
  int call(std::span<const BitString> args) const { return apply(args, 0); }

  const std::string& name() const { return name_; }
  int level() const { return level_; }

 private:
  std::string name_;
  int level_;
  Fn fn_;
  QueryLedger* ledger_;
};

CountedOracle oracle_f(const ITree& tree, QueryLedger& ledger);
CountedOracle oracle_g(const ITree& tree, int k, QueryLedger& ledger);

std::vector<std::uint64_t> encode_args(std::span<const BitString> args);

}  // namespace rfs
