#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fqkd {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// 12 significant digits, shortest of fixed/scientific ("%.12g").
std::string format_number(double x);

/// Header line, comma separated, LF line endings. Cells must not contain
/// commas, quotes or newlines.
std::string to_csv_string(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// Throws IoError.
void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace fqkd
