#include "nematic_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nematic/errors.hpp"

namespace nematic::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigError(origin + ":" + std::to_string(line) + ": malformed section header '" + s + "'");
      }
      section = trim(s.substr(1, s.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line) + ": key outside any [section]");
    }
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line) + ": empty key");
    cfg.sections_[section].push_back({key, trim(s.substr(eq + 1)), line});
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

bool Config::has(const std::string& section, const std::string& key) const {
  return !all(section, key).empty();
}

std::vector<ConfigEntry> Config::all(const std::string& section, const std::string& key) const {
  std::vector<ConfigEntry> out;
  auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& e : it->second)
    if (e.key == key) out.push_back(e);
  return out;
}

const ConfigEntry* Config::unique(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return nullptr;
  const ConfigEntry* found = nullptr;
  for (const auto& e : it->second) {
    if (e.key != key) continue;
    if (found) fail(e, section, "duplicate key");
    found = &e;
  }
  return found;
}

void Config::fail(const ConfigEntry& e, const std::string& section, const std::string& why) const {
  throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": [" + section + "] " + e.key + ": " + why);
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  const ConfigEntry* e = unique(section, key);
  if (!e) return std::nullopt;
  return e->value;
}

std::string Config::require(const std::string& section, const std::string& key) const {
  const ConfigEntry* e = unique(section, key);
  if (!e) throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
  return e->value;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
  const ConfigEntry* e = unique(section, key);
  if (!e) return fallback;
  const auto v = to_double(e->value);
  if (!v) fail(*e, section, "expected a number, got '" + e->value + "'");
  return *v;
}

double Config::require_double(const std::string& section, const std::string& key) const {
  if (!unique(section, key)) throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
  return get_double(section, key, 0.0);
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
  const ConfigEntry* e = unique(section, key);
  if (!e) return fallback;
  int v = 0;
  const char* end = e->value.data() + e->value.size();
  auto [p, ec] = std::from_chars(e->value.data(), end, v);
  if (ec != std::errc() || p != end) fail(*e, section, "expected an integer, got '" + e->value + "'");
  return v;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const ConfigEntry* e = unique(section, key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  fail(*e, section, "expected true/false, got '" + e->value + "'");
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
  const ConfigEntry* e = unique(section, key);
  std::vector<double> out;
  if (!e) return out;
  std::string item;
  std::istringstream in(e->value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto v = to_double(item);
    if (!v) fail(*e, section, "expected a comma-separated list of numbers, bad item '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::string Config::canonical() const {
  std::ostringstream out;
  for (const auto& [section, entries] : sections_) {
    std::vector<const ConfigEntry*> sorted;
    for (const auto& e : entries) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->key < y->key; });
    for (const auto* e : sorted) {
      // Collapse internal whitespace so formatting changes keep the digest.
      std::istringstream words(e->value);
      std::string w, value;
      while (words >> w) value += (value.empty() ? "" : " ") + w;
      out << section << '.' << e->key << '=' << value << '\n';
    }
  }
  return out.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace nematic::cli
