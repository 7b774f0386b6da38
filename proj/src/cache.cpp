#include "cache.h"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace flagcalc {

namespace {

using nlohmann::ordered_json;

std::string matrix_hash(const CartanMatrix& c) {
  // FNV-1a over the entries; collisions are caught by the stored matrix.
  unsigned long long h = 1469598103934665603ULL;
  auto mix = [&](long long v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<unsigned char>(v >> (8 * b));
      h *= 1099511628211ULL;
    }
  };
  mix(c.rank);
  for (int v : c.entries) mix(v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

ordered_json matrix_json(const CartanMatrix& c) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < c.rank; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < c.rank; ++j) row.push_back(c.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string entry_path(const CartanMatrix& c) {
  std::string dir = cache_directory();
  if (dir.empty()) return {};
  return dir + "/" + matrix_hash(c) + ".weyl.json";
}

}  // namespace

std::string cache_directory() {
  if (const char* env = std::getenv("FLAGCALC_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return std::string(xdg) + "/flagcalc";
  if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/flagcalc";
  return {};
}

std::optional<WeylCacheEntry> cache_load(const CartanMatrix& c) {
  std::string path = entry_path(c);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  ordered_json doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("matrix") || !doc.contains("order") ||
      !doc.contains("longest_length") || !doc.contains("w0_word_count") ||
      doc["matrix"] != matrix_json(c)) {
    std::cerr << "flagcalc: ignoring corrupt cache entry " << path << "\n";
    return std::nullopt;
  }
  WeylCacheEntry e;
  try {
    e.order = doc["order"].get<std::string>();
    e.longest_length = doc["longest_length"].get<int>();
    e.w0_word_count = doc["w0_word_count"].get<std::string>();
  } catch (const std::exception&) {
    std::cerr << "flagcalc: ignoring corrupt cache entry " << path << "\n";
    return std::nullopt;
  }
  return e;
}

void cache_store(const CartanMatrix& c, const WeylCacheEntry& entry) {
  std::string path = entry_path(c);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cache_directory(), ec);
  if (ec) return;
  ordered_json doc;
  doc["matrix"] = matrix_json(c);
  doc["order"] = entry.order;
  doc["longest_length"] = entry.longest_length;
  doc["w0_word_count"] = entry.w0_word_count;
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace flagcalc
