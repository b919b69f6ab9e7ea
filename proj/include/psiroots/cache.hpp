#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psiroots/format.hpp"
#include "psiroots/zeros.hpp"

namespace psiroots {

// Write-then-rename so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

// Zero tables are cached as full-precision CSV keyed by family and k_max, so
// a cache hit reproduces the computed table bit for bit.
inline std::filesystem::path zero_cache_path(const std::filesystem::path& dir,
                                             ZeroFamily family, std::int64_t k_max) {
  return dir / (std::string(family_name(family)) + "_k" + std::to_string(k_max) + ".csv");
}

inline std::string zero_cache_payload(std::span<const ZeroRecord> records) {
  std::string out = "index,value,residual,bracket_lo,bracket_hi,iterations\n";
  for (const auto& r : records) {
    out += std::to_string(r.index);
    out += ',' + fmt_sig(r.value, kJsonDigits);
    out += ',' + fmt_sig(r.residual, kJsonDigits);
    out += ',' + fmt_sig(r.bracket_lo, kJsonDigits);
    out += ',' + fmt_sig(r.bracket_hi, kJsonDigits);
    out += ',' + std::to_string(r.iterations);
    out += '\n';
  }
  return out;
}

inline std::optional<std::vector<ZeroRecord>> load_zero_cache(
    const std::filesystem::path& path, ZeroFamily family, std::int64_t k_max) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  std::string line;
  if (!std::getline(f, line) ||
      line != "index,value,residual,bracket_lo,bracket_hi,iterations") {
    return std::nullopt;
  }
  std::vector<ZeroRecord> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    ZeroRecord r{};
    r.family = family;
    try {
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.index = std::stoll(field);
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.value = std::stod(field);
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.residual = std::stod(field);
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.bracket_lo = std::stod(field);
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.bracket_hi = std::stod(field);
      if (!std::getline(ss, field, ',')) return std::nullopt;
      r.iterations = std::stoi(field);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (r.index != static_cast<std::int64_t>(out.size())) return std::nullopt;
    out.push_back(r);
  }
  if (std::cmp_not_equal(out.size(), k_max + 1)) return std::nullopt;
  return out;
}

// Cache-aware table: consults DIGAMMA_ZEROS_CACHE-style directory `dir` when
// non-empty; a malformed or mismatched cache entry is recomputed and
// rewritten.
inline std::vector<ZeroRecord> cached_zero_table(const std::string& dir, ZeroFamily family,
                                                 std::int64_t k_max, unsigned threads) {
  if (dir.empty()) return zero_table(family, k_max, threads);
  const std::filesystem::path path = zero_cache_path(dir, family, k_max);
  if (auto hit = load_zero_cache(path, family, k_max)) return std::move(*hit);
  auto table = zero_table(family, k_max, threads);
  std::filesystem::create_directories(dir);
  write_file_atomic(path, zero_cache_payload(table));
  return table;
}

}  // namespace psiroots
