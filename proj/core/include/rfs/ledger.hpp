#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace rfs {

/// Exact per-oracle invocation counters, keyed by (oracle name, recursion
/// level).  Counters only ever increase during a run; reported complexities
/// are read from here, never estimated.
class QueryLedger {
 public:
  using Key = std::pair<std::string, int>;

  void record(const std::string& name, int level) { ++counts_[{name, level}]; }

  std::uint64_t count(const std::string& name, int level) const {
    auto it = counts_.find({name, level});
    return it == counts_.end() ? 0 : it->second;
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [k, v] : counts_) t += v;
    return t;
  }

  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  void clear() { counts_.clear(); }

 private:
  std::map<Key, std::uint64_t> counts_;
};

}  // namespace rfs
