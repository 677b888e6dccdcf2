/// @file io.hpp
/// @brief CSV and key=value helpers shared by every exporter.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace faddeev {

/// Shortest-safe decimal form with 17 significant digits (round-trips doubles).
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  /// Throws std::out_of_range if the column is absent.
  [[nodiscard]] const std::vector<double>& column(std::string_view name) const;
  [[nodiscard]] std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Numeric CSV with a header row.
CsvTable read_csv(const std::string& path);

/// Sidecar metadata: one `key = value` per line, keys in sorted order.
void write_key_values(const std::string& path, const std::map<std::string, std::string>& kv);
std::map<std::string, std::string> read_key_values(const std::string& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace faddeev
