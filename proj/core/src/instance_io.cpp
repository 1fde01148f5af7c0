#include "rfs/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rfs {

namespace {

using nlohmann::json;

std::string prefix_key(const std::vector<std::uint64_t>& values, const std::vector<int>& lengths) {
  std::string key;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) key += ",";
    key += BitString(values[i], lengths[i]).str();
  }
  return key;
}

std::vector<std::uint64_t> parse_prefix_key(const std::string& key) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    values.push_back(BitString::from_string(part).value());
  }
  return values;
}

}  // namespace

std::string serialize_instance(const InstanceFile& file) {
  json j;
  j["format_version"] = kInstanceFormatVersion;
  j["kind"] = file.kind;
  const FSTreeConfig& config = file.tree.config();
  j["g_family"] = to_string(config.g_family);
  j["seed"] = config.seed;
  j["trivializing"] = is_trivializing(config.g_family);
  if (file.kind == "aaronson") {
    j["h"] = static_cast<int>(config.lengths.size());
    j["n"] = config.lengths.front();
  } else {
    j["lengths"] = config.lengths;
    j["depth"] = config.depth();
    if (file.tree.has_explicit_tables()) {
      json tables = json::object();
      for (const auto& [level, table] : file.tree.tables()) {
        json level_json = json::object();
        for (const auto& [prefix, secret] : table) {
          level_json[prefix_key(prefix, config.lengths)] = secret.str();
        }
        tables[std::to_string(level)] = std::move(level_json);
      }
      j["secrets"] = std::move(tables);
    }
  }
  if (file.x1) j["x1"] = file.x1->str();
  return j.dump(2) + "\n";
}

InstanceFile parse_instance(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("format_version") || j["format_version"].get<int>() != kInstanceFormatVersion) {
    throw std::invalid_argument("instance file: unsupported format_version");
  }
  FSTreeConfig config;
  const std::string kind = j.value("kind", "tree");
  auto family = g_family_from_string(j.at("g_family").get<std::string>());
  if (!family) throw std::invalid_argument("instance file: unknown g_family");
  config.g_family = *family;
  config.seed = j.at("seed").get<std::uint64_t>();

  if (kind == "aaronson") {
    const int h = j.at("h").get<int>();
    const int n = j.at("n").get<int>();
    if (h < 2) throw std::invalid_argument("instance file: aaronson height must be >= 2");
    config.lengths.assign(static_cast<std::size_t>(h), n);
  } else if (kind == "tree") {
    config.lengths = j.at("lengths").get<std::vector<int>>();
    if (j.contains("depth") && j["depth"].get<int>() != config.depth()) {
      throw std::invalid_argument("instance file: depth does not match lengths");
    }
  } else {
    throw std::invalid_argument("instance file: unknown kind " + kind);
  }

  InstanceFile file{kind == "aaronson" || !j.contains("secrets")
                        ? FSTree::build(config)
                        : [&] {
                            FSTree::SecretTables tables;
                            for (const auto& [level_str, table_json] : j["secrets"].items()) {
                              const int level = std::stoi(level_str);
                              FSTree::SecretTable table;
                              for (const auto& [key, secret] : table_json.items()) {
                                table[parse_prefix_key(key)] =
                                    BitString::from_string(secret.get<std::string>());
                              }
                              tables[level] = std::move(table);
                            }
                            return FSTree::from_tables(config, std::move(tables));
                          }(),
                    std::nullopt, kind};
  if (j.contains("x1")) file.x1 = BitString::from_string(j["x1"].get<std::string>());
  return file;
}

void save_instance(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_instance(file);
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[hash & 0xF];
    hash >>= 4;
  }
  return hex;
}

std::string instance_digest(const InstanceFile& file) {
  return fnv1a_hex(serialize_instance(file));
}

}  // namespace rfs
