#include "fqkd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fqkd/errors.hpp"

namespace fqkd {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

void check_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") != std::string::npos)
    throw std::invalid_argument("csv cell contains a delimiter: " + cell);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv_string(const CsvTable& table) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (cells.size() != table.header.size()) throw std::invalid_argument("csv row width differs from header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      check_cell(cells[i]);
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  bool first = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw IoError("csv row width differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string text = to_csv_string(table);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace fqkd
