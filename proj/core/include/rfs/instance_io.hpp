#pragma once

#include <cstdint>
#include <string>

#include "rfs/instance.hpp"

namespace rfs {

inline constexpr int kInstanceFormatVersion = 1;

struct InstanceFile {
  FSTree tree;
  std::optional<BitString> x1;
  std::string kind = "tree";  // "tree" or "aaronson"
};

/// Canonical textual (JSON) form; byte-identical for identical contents.
std::string serialize_instance(const InstanceFile& file);
InstanceFile parse_instance(const std::string& text);

void save_instance(const InstanceFile& file, const std::string& path);
InstanceFile load_instance(const std::string& path);

/// FNV-1a 64-bit digest of the canonical serialized form, as 16 hex digits.
std::string instance_digest(const InstanceFile& file);
std::string fnv1a_hex(const std::string& data);

}  // namespace rfs
