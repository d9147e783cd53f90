#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace arealaw::cli {

/// Locale-independent number formatting: shortest round-trip form, '.' decimal.
std::string format_number(double v);

using CsvCell = std::variant<std::string, std::uint64_t, double>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }
  /// Throws std::invalid_argument unless the row matches the header width.
  void add(std::vector<CsvCell> row);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace arealaw::cli
