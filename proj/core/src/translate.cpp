#include "rfs/translate.hpp"

#include <stdexcept>

namespace rfs {

ConvertedTree::ConvertedTree(AaronsonInstance instance) : instance_(std::move(instance)) {
  if (instance_.h < 1) throw std::invalid_argument("ConvertedTree: height must be >= 1");
  if (instance_.n < 1) throw std::invalid_argument("ConvertedTree: width must be >= 1");
  lengths_.assign(static_cast<std::size_t>(instance_.h), instance_.n);
}

BitString ConvertedTree::secret(int k, std::span<const BitString> prefix) const {
  if (k < 1 || k > depth()) throw std::invalid_argument("secret: level out of range");
  check_args(k, prefix);

  auto key = std::make_pair(k, encode_args(prefix));
  if (auto it = secret_cache_.find(key); it != secret_cache_.end()) return it->second;

  const int n = instance_.n;
  std::vector<BitString> args(prefix.begin(), prefix.end());
  args.push_back(BitString::zeros(n));

  // Promise (ii): the level-(k+1) answer function is linear in its last
  // argument; recover the coefficient string with 1_j probes, then verify
  // linearity over the whole section.
  std::uint64_t acc = 0;
  for (int j = 1; j <= n; ++j) {
    args.back() = BitString::one_hot(j, n);
    acc = (acc << 1) | static_cast<std::uint64_t>(eval_f(k + 1, args));
  }
  const BitString sigma(acc, n);
  for (std::uint64_t t = 0; t < (1ULL << n); ++t) {
    args.back() = BitString(t, n);
    if (eval_f(k + 1, args) != rfs::dot(sigma, args.back())) {
      std::string witness = "promise violation at level " + std::to_string(k + 1) + ", prefix (";
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i) witness += ",";
        witness += prefix[i].str();
      }
      witness += "), argument " + args.back().str() + ": answer function is not linear";
      throw std::runtime_error(witness);
    }
  }

  secret_cache_.emplace(std::move(key), sigma);
  return sigma;
}

int ConvertedTree::eval_f(int k, std::span<const BitString> args) const {
  if (k < 1 || k > depth() + 1) throw std::invalid_argument("eval_f: level out of range");
  check_args(k, args);
  if (k == instance_.h) return instance_.A(args);
  return instance_.G(secret(k, args));
}

int ConvertedTree::eval_g(int k, std::span<const BitString> args) const {
  if (k < 1 || k > depth()) throw std::invalid_argument("eval_g: level out of range");
  if (static_cast<int>(args.size()) != k + 1) {
    throw std::invalid_argument("eval_g: expected k+1 arguments");
  }
  check_args(k, args.subspan(0, static_cast<std::size_t>(k)));
  if (args.back().width() != instance_.n) throw std::invalid_argument("eval_g: width mismatch");
  return instance_.G(args.back());
}

AaronsonInstance to_aaronson(const FSTree& tree) {
  const auto& lengths = tree.lengths();
  const int n = lengths.front();
  for (int w : lengths) {
    if (w != n) {
      throw std::invalid_argument(
          "not expressible in RFS_h form: register widths are not uniform");
    }
  }
  switch (tree.config().g_family) {
    case GFamily::LastArgAnd:
    case GFamily::LastArgMajority:
    case GFamily::LastArgParity:
      break;
    default:
      throw std::invalid_argument(
          "not expressible in RFS_h form: g depends on more than its last argument");
  }

  auto backing = std::make_shared<FSTree>(tree);
  const int h = tree.depth() + 1;

  AaronsonInstance instance;
  instance.h = h;
  instance.n = n;
  instance.g_family = tree.config().g_family;
  instance.seed = tree.config().seed;
  instance.A = [backing, h](std::span<const BitString> args) { return backing->eval_f(h, args); };
  instance.G = [backing, n](const BitString& x) {
    std::vector<BitString> args{BitString::zeros(n), x};
    return backing->eval_g(1, args);
  };
  return instance;
}

ConvertedTree from_aaronson(AaronsonInstance instance) { return ConvertedTree(std::move(instance)); }

std::optional<std::string> verify_aaronson_promises(const AaronsonInstance& instance,
                                                    std::uint64_t max_checks) {
  ConvertedTree tree(instance);
  const int n = instance.n;
  std::uint64_t checks = 0;
  try {
    for (int k = 1; k <= tree.depth(); ++k) {
      const std::uint64_t prefix_space = 1ULL << (n * k);
      for (std::uint64_t pv = 0; pv < prefix_space; ++pv) {
        if (++checks > max_checks) return std::nullopt;  // budget exhausted, no violation found
        std::vector<BitString> prefix;
        std::uint64_t rest = pv;
        for (int j = 0; j < k; ++j) {
          prefix.push_back(BitString(rest & ((1ULL << n) - 1), n));
          rest >>= n;
        }
        (void)tree.secret(k, prefix);  // throws with a witness on violation
      }
    }
  } catch (const std::runtime_error& err) {
    return std::string(err.what());
  }
  return std::nullopt;
}

}  // namespace rfs
