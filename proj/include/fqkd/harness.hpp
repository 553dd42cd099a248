#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fqkd/adversary.hpp"
#include "fqkd/csv.hpp"
#include "fqkd/impersonation.hpp"
#include "fqkd/pns.hpp"
#include "fqkd/protocol.hpp"

namespace fqkd::harness {

struct NoAttack {};
/// Without γ, each round draws its own γ before α and β.
struct GeneralAttack {
  double c_x = 1.0;
  double c_y = 1.0;
  std::optional<EquatorAngle> gamma;
};
struct InterceptAttack {
  std::optional<EquatorAngle> gamma;
};
struct ImpersonationAttack {
  adversary::ImpersonationVariant variant;
};
struct PnsAttack {
  adversary::PnsVariant variant;
};

using AttackSpec = std::variant<NoAttack, GeneralAttack, InterceptAttack, ImpersonationAttack, PnsAttack>;

/// none | general:cx,cy[,gamma] | intercept[:gamma] | impersonate:one |
/// impersonate:two | pns:3 | pns:4home. Throws std::invalid_argument.
AttackSpec parse_attack(std::string_view text);
std::string to_string(const AttackSpec& attack);

struct ExperimentConfig {
  std::uint64_t rounds = 1000;
  std::uint64_t test_bits = 0;
  std::uint64_t master_seed = 0;
  AttackSpec attack = NoAttack{};
  std::filesystem::path output_path;
  /// 0 picks FARADAY_QKD_WORKERS or the hardware concurrency.
  unsigned workers = 0;

  void validate() const;
};

unsigned resolve_workers(unsigned requested);

/// `key = value` lines, `#` starts a comment. Throws IoError when the
/// file cannot be read and std::invalid_argument on malformed lines.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
/// Recognized keys: rounds, test_bits, seed, attack, out, workers.
void apply_config(const std::map<std::string, std::string>& values, ExperimentConfig& cfg);

struct RoundRecord {
  protocol::RoundTranscript transcript;
  int eve_odd_guess = -1;  ///< -1 when the scenario has no eavesdropper guess
  int eve_even_guess = -1;
  std::optional<double> trace_distance;
};

RoundRecord simulate_round(const AttackSpec& attack, std::uint64_t master_seed, std::uint64_t n);

struct RunReport {
  ExperimentConfig config;
  std::size_t rounds = 0;
  std::size_t tested = 0;
  std::size_t test_mismatches = 0;
  bool detected = false;
  /// Mismatch rate on the tested bits; NaN without test bits.
  double detection_frequency = 0.0;
  double detection_sigma = 0.0;
  /// Odd-bit mismatch rate over every round.
  double odd_mismatch_rate = 0.0;
  double odd_mismatch_sigma = 0.0;
  double even_mismatch_rate = 0.0;
  std::optional<double> eve_odd_accuracy;
  std::optional<double> eve_even_accuracy;
  double mutual_info_ab = 0.0;
  std::optional<double> mutual_info_ae;
  std::optional<double> min_trace_distance;
  std::size_t final_key_length = 0;
  double wall_seconds = 0.0;

  std::string to_text() const;
};

struct ExperimentResult {
  RunReport report;
  std::vector<RoundRecord> records;
};

/// Runs and aggregates without touching the filesystem.
ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg);
/// As above, then writes the per-round CSV when output_path is set.
RunReport run_experiment(const ExperimentConfig& cfg);

CsvTable rounds_table(const std::vector<RoundRecord>& records);

/// Columns p_d, I_AB, I_AE, p_e, sum.
CsvTable curves_table(double step);
void emit_curves(double step, const std::filesystem::path& path);

std::string solve_report();

}  // namespace fqkd::harness
