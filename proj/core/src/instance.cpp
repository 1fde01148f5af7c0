#include "rfs/instance.hpp"

#include <stdexcept>

namespace rfs {

std::string to_string(GFamily family) {
  switch (family) {
    case GFamily::LastArgAnd: return "and";
    case GFamily::LastArgMajority: return "majority";
    case GFamily::LastArgParity: return "parity";
    case GFamily::PrfRandom: return "prf";
    case GFamily::ConstZero: return "const0";
  }
  throw std::logic_error("unknown GFamily");
}

std::optional<GFamily> g_family_from_string(std::string_view name) {
  if (name == "and") return GFamily::LastArgAnd;
  if (name == "majority") return GFamily::LastArgMajority;
  if (name == "parity") return GFamily::LastArgParity;
  if (name == "prf") return GFamily::PrfRandom;
  if (name == "const0") return GFamily::ConstZero;
  return std::nullopt;
}

void FSTreeConfig::validate() const {
  if (lengths.size() < 2) {
    throw std::invalid_argument("FSTreeConfig: need at least two register lengths (depth >= 1)");
  }
  for (int n : lengths) {
    if (n < 1) throw std::invalid_argument("FSTreeConfig: zero-width register");
    if (n > 20) throw std::invalid_argument("FSTreeConfig: register width above desk-scale cap of 20");
  }
}

namespace detail {

std::uint64_t prf(std::uint64_t seed, std::span<const std::uint64_t> words) {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = mix64(seed ^ kGolden);
  for (std::uint64_t w : words) {
    h = mix64(h + kGolden + w);
  }
  return h;
}

}  // namespace detail

int ITree::length(int k) const {
  const auto& ns = lengths();
  if (k < 1 || k > static_cast<int>(ns.size())) {
    throw std::invalid_argument("level out of range");
  }
  return ns[static_cast<std::size_t>(k - 1)];
}

void ITree::check_args(int k, std::span<const BitString> args) const {
  if (static_cast<int>(args.size()) != k) {
    throw std::invalid_argument("argument count does not match level");
  }
  for (int j = 1; j <= k; ++j) {
    if (args[static_cast<std::size_t>(j - 1)].width() != length(j)) {
      throw std::invalid_argument("argument width mismatch at position " + std::to_string(j));
    }
  }
}

std::vector<std::uint64_t> encode_args(std::span<const BitString> args) {
  std::vector<std::uint64_t> words;
  words.reserve(args.size() * 2);
  for (const BitString& x : args) {
    words.push_back(static_cast<std::uint64_t>(x.width()));
    words.push_back(x.value());
  }
  return words;
}

FSTree FSTree::build(const FSTreeConfig& config) {
  config.validate();
  FSTree tree(config);
  tree.check_surjective();
  return tree;
}

FSTree FSTree::from_tables(const FSTreeConfig& config, SecretTables tables) {
  config.validate();
  FSTree tree(config);
  tree.check_surjective();
  tree.explicit_tables_ = std::move(tables);
  return tree;
}

const FSTree::SecretTables& FSTree::tables() const {
  if (!explicit_tables_) throw std::logic_error("FSTree: no explicit tables");
  return *explicit_tables_;
}

int FSTree::g_of_candidate(int k, std::span<const BitString> xs, const BitString& candidate) const {
  if (candidate.width() != length(k + 1)) {
    throw std::invalid_argument("g candidate width mismatch");
  }
  switch (config_.g_family) {
    case GFamily::LastArgAnd:
      return candidate.popcount() == candidate.width() ? 1 : 0;
    case GFamily::LastArgMajority:
      return 2 * candidate.popcount() > candidate.width() ? 1 : 0;
    case GFamily::LastArgParity:
      return candidate.popcount() & 1;
    case GFamily::PrfRandom: {
      // Pinned values at candidates 0 and 1 keep every section surjective.
      if (candidate.value() == 0) return 0;
      if (candidate.value() == 1) return 1;
      std::vector<std::uint64_t> words = encode_args(xs);
      words.push_back(0xF00DF00DULL + static_cast<std::uint64_t>(k));
      words.push_back(candidate.value());
      return static_cast<int>(detail::prf(config_.seed, words) & 1);
    }
    case GFamily::ConstZero:
      return 0;
  }
  throw std::logic_error("unknown GFamily");
}

void FSTree::check_surjective() const {
  // Sections of g_k in the candidate argument must hit both output values,
  // otherwise the derivation promise cannot be satisfied.
  for (int k = 1; k <= depth(); ++k) {
    const int w = length(k + 1);
    std::vector<BitString> zeros_prefix;
    for (int j = 1; j <= k; ++j) zeros_prefix.push_back(BitString::zeros(length(j)));
    bool seen[2] = {false, false};
    for (std::uint64_t v = 0; v < (1ULL << w) && !(seen[0] && seen[1]); ++v) {
      seen[g_of_candidate(k, zeros_prefix, BitString(v, w))] = true;
    }
    if (!(seen[0] && seen[1])) {
      throw std::invalid_argument("unsatisfiable promise: g_" + std::to_string(k) +
                                  " is not surjective onto {0,1}");
    }
  }
}

BitString FSTree::secret(int k, std::span<const BitString> prefix) const {
  if (k < 1 || k > depth()) throw std::invalid_argument("secret: level out of range");
  check_args(k, prefix);
  const int out_width = length(k + 1);

  auto key = std::make_pair(k, encode_args(prefix));
  if (auto it = secret_cache_.find(key); it != secret_cache_.end()) return it->second;

  BitString result = BitString::zeros(out_width);
  if (explicit_tables_) {
    auto lvl = explicit_tables_->find(k);
    if (lvl == explicit_tables_->end()) {
      throw std::invalid_argument("explicit secret table missing level " + std::to_string(k));
    }
    std::vector<std::uint64_t> vals;
    for (const BitString& x : prefix) vals.push_back(x.value());
    auto it = lvl->second.find(vals);
    if (it == lvl->second.end()) {
      throw std::invalid_argument("explicit secret table missing prefix at level " + std::to_string(k));
    }
    result = it->second;
    if (result.width() != out_width) {
      throw std::invalid_argument("explicit secret width mismatch");
    }
  } else if (k == 1) {
    std::vector<std::uint64_t> words = encode_args(prefix);
    words.push_back(0x5EC0ULL + 1);
    std::uint64_t raw = detail::prf(config_.seed, words);
    result = BitString(raw & (out_width == 64 ? ~0ULL : ((1ULL << out_width) - 1)), out_width);
  } else {
    // Preimage sampling: pick s_k uniformly (pseudorandomly) among candidates
    // v with g_k(prefix, v) = s_{k-1}(x_1..x_{k-1}) . x_k.
    const int target =
        rfs::dot(secret(k - 1, prefix.subspan(0, static_cast<std::size_t>(k - 1))), prefix.back());
    std::vector<std::uint64_t> preimage;
    for (std::uint64_t v = 0; v < (1ULL << out_width); ++v) {
      if (g_of_candidate(k, prefix, BitString(v, out_width)) == target) preimage.push_back(v);
    }
    if (preimage.empty()) {
      throw std::runtime_error("unsatisfiable promise: empty preimage at level " + std::to_string(k));
    }
    std::vector<std::uint64_t> words = encode_args(prefix);
    words.push_back(0x5EC0ULL + static_cast<std::uint64_t>(k));
    std::uint64_t idx = detail::prf(config_.seed, words) % preimage.size();
    result = BitString(preimage[idx], out_width);
  }

  secret_cache_.emplace(std::move(key), result);
  return result;
}

int FSTree::eval_g(int k, std::span<const BitString> args) const {
  if (k < 1 || k > depth()) throw std::invalid_argument("eval_g: level out of range");
  if (static_cast<int>(args.size()) != k + 1) {
    throw std::invalid_argument("eval_g: expected k+1 arguments");
  }
  check_args(k, args.subspan(0, static_cast<std::size_t>(k)));
  return g_of_candidate(k, args.subspan(0, static_cast<std::size_t>(k)), args.back());
}

int FSTree::eval_f(int k, std::span<const BitString> args) const {
  if (k < 1 || k > depth() + 1) throw std::invalid_argument("eval_f: level out of range");
  check_args(k, args);
  if (k == depth() + 1) {
    return rfs::dot(secret(depth(), args.subspan(0, static_cast<std::size_t>(depth()))), args.back());
  }
  std::vector<BitString> with_secret(args.begin(), args.end());
  with_secret.push_back(secret(k, args));
  return eval_g(k, with_secret);
}

CountedOracle oracle_f(const ITree& tree, QueryLedger& ledger) {
  const int level = tree.depth() + 1;
  return CountedOracle(
      "f", level, [&tree, level](std::span<const BitString> args) { return tree.eval_f(level, args); },
      &ledger);
}

CountedOracle oracle_g(const ITree& tree, int k, QueryLedger& ledger) {
  if (k < 1 || k > tree.depth()) throw std::invalid_argument("oracle_g: level out of range");
  return CountedOracle(
      "g", k, [&tree, k](std::span<const BitString> args) { return tree.eval_g(k, args); }, &ledger);
}

}  // namespace rfs
