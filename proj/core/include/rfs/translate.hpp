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
#include "rfs/instance.hpp"

namespace rfs {

/// Height-h RFS in the uniform-width single-output-function form: an oracle
/// A over h n-bit strings plus the output function G.  Intermediate answer
/// bits b are derived, never stored.
struct AaronsonInstance {
  int h = 1;
  int n = 1;
  std::function<int(std::span<const BitString>)> A;  // h arguments
  std::function<int(const BitString&)> G;
  // Backing description when the instance came from a generated tree; lets
  // instance files stay O(1) in size.
  std::optional<GFamily> g_family;
  std::optional<std::uint64_t> seed;
};

/// Tree-form oracles reconstructed from an Aaronson instance: secrets are
/// extracted from A by 1_j probes and the induced f_k/g_k satisfy the tree
/// promises.  Implements the common solver surface, so converted instances
/// plug into every track.
class ConvertedTree final : public ITree {
 public:
  explicit ConvertedTree(AaronsonInstance instance);

  const std::vector<int>& lengths() const override { return lengths_; }
  int eval_f(int k, std::span<const BitString> args) const override;
  int eval_g(int k, std::span<const BitString> args) const override;
  BitString secret(int k, std::span<const BitString> prefix) const override;

 private:
  AaronsonInstance instance_;
  std::vector<int> lengths_;
  mutable std::map<std::pair<int, std::vector<std::uint64_t>>, BitString> secret_cache_;
};

/// Conversion tree -> RFS_h.  Requires uniform widths and a
/// last-argument g family shared by all levels; otherwise the tree is not
/// expressible in RFS_h form.
AaronsonInstance to_aaronson(const FSTree& tree);

/// Conversion RFS_h -> tree-form oracles.
ConvertedTree from_aaronson(AaronsonInstance instance);

/// Exhaustively (up to the budget) verifies promises (i)-(ii): every level's
/// answer function is linear in its last argument.  Returns a witness string
/// on violation, nullopt when the promises hold.
std::optional<std::string> verify_aaronson_promises(const AaronsonInstance& instance,
                                                    std::uint64_t max_checks = 1u << 16);

}  // namespace rfs
