#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fqkd/errors.hpp"
#include "fqkd/harness.hpp"

namespace fqkd::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("config key '" + key + "' expects an unsigned integer, got '" + value + "'");
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    out[std::string(key)] = std::string(value);
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(const std::map<std::string, std::string>& values, ExperimentConfig& cfg) {
  for (const auto& [key, value] : values) {
    if (key == "rounds") {
      cfg.rounds = parse_u64(key, value);
    } else if (key == "test_bits") {
      cfg.test_bits = parse_u64(key, value);
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(key, value);
    } else if (key == "attack") {
      cfg.attack = parse_attack(value);
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(parse_u64(key, value));
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace fqkd::harness
