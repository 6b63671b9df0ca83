#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nematic::cli {

/// Malformed or inconsistent configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line;
};

/// Flat "key = value" text with [section] headers and '#' comments. Keys may
/// repeat (ensemble members); scalar getters reject repeats.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }
  bool has(const std::string& section, const std::string& key) const;

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;
  std::vector<ConfigEntry> all(const std::string& section, const std::string& key) const;

  double get_double(const std::string& section, const std::string& key, double fallback) const;
  double require_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  /// Sections and keys sorted, one "section.key=value" per line; repeated keys
  /// keep their file order.
  std::string canonical() const;
  const std::string& origin() const { return origin_; }

 private:
  const ConfigEntry* unique(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const ConfigEntry& e, const std::string& section, const std::string& why) const;

  std::string origin_;
  std::map<std::string, std::vector<ConfigEntry>> sections_;
};

/// FNV-1a 64-bit hash, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace nematic::cli
