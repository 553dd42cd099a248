#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fqkd/analysis.hpp"
#include "fqkd/csv.hpp"
#include "fqkd/errors.hpp"
#include "fqkd/harness.hpp"

using namespace fqkd;
using namespace fqkd::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "fqkd_harness_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csv round trip") {
  CsvTable t{{"a", "b"}, {{format_number(0.1), format_number(1.0 / 3)}, {format_number(1e-20), "x"}}};
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(parse_csv(to_csv_string(t)) == t);
  const auto p = scratch("rt.csv");
  write_csv(t, p);
  CHECK(read_csv(p) == t);
  CHECK(slurp(p).find('\r') == std::string::npos);
  CHECK_THROWS_AS(read_csv(scratch("missing.csv")), IoError);
  CHECK_THROWS_AS(write_csv(t, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("attack parsing") {
  CHECK(std::holds_alternative<NoAttack>(parse_attack("none")));
  const auto g = std::get<GeneralAttack>(parse_attack("general:0.5,0.8,1.2"));
  CHECK(g.c_x == 0.5);
  CHECK(g.c_y == 0.8);
  CHECK(g.gamma->radians() == doctest::Approx(1.2));
  CHECK_FALSE(std::get<GeneralAttack>(parse_attack("general:0.5,0.5")).gamma);
  CHECK(std::get<InterceptAttack>(parse_attack("intercept:0.3")).gamma);
  CHECK_FALSE(std::get<InterceptAttack>(parse_attack("intercept")).gamma);
  CHECK(std::get<ImpersonationAttack>(parse_attack("impersonate:one")).variant == adversary::ImpersonationVariant::OneHome);
  CHECK(std::get<PnsAttack>(parse_attack("pns:4home")).variant == adversary::PnsVariant::FourHome);
  for (const char* bad : {"", "general:2,0", "general:0.5", "intercept:x", "pns:5", "bogus", "impersonate:three"})
    CHECK_THROWS_AS(parse_attack(bad), std::invalid_argument);
  for (const char* text : {"none", "general:0.5,0.8", "impersonate:two", "pns:3"})
    CHECK(to_string(parse_attack(text)) == text);
}

TEST_CASE("config files") {
  const auto kv = parse_config_text("# comment\nrounds = 200\n test_bits=20 \nseed = 9\nattack = intercept\n\nout = x.csv\n");
  ExperimentConfig cfg;
  apply_config(kv, cfg);
  CHECK(cfg.rounds == 200);
  CHECK(cfg.test_bits == 20);
  CHECK(cfg.master_seed == 9);
  CHECK(std::holds_alternative<InterceptAttack>(cfg.attack));
  CHECK(cfg.output_path == "x.csv");
  CHECK_THROWS_AS(apply_config({{"colour", "blue"}}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("no equals sign"), std::invalid_argument);
  CHECK_THROWS_AS(read_config_file(scratch("none.cfg")), IoError);

  ExperimentConfig bad;
  bad.rounds = 10;
  bad.test_bits = 11;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.rounds = 0;
  bad.test_bits = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("workers resolve from the environment") {
  CHECK(resolve_workers(3) == 3);
  setenv("FARADAY_QKD_WORKERS", "5", 1);
  CHECK(resolve_workers(0) == 5);
  unsetenv("FARADAY_QKD_WORKERS");
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("no-attack experiment") {
  ExperimentConfig cfg;
  cfg.rounds = 2000;
  cfg.test_bits = 200;
  cfg.master_seed = 4;
  cfg.workers = 1;
  const auto rep = run_experiment(cfg);
  CHECK_FALSE(rep.detected);
  CHECK(rep.detection_frequency == 0.0);
  CHECK(rep.odd_mismatch_rate == 0.0);
  CHECK(rep.even_mismatch_rate == 0.0);
  CHECK(rep.final_key_length == 2 * (2000 - 200));
  CHECK(rep.mutual_info_ab > 0.99);  // plug-in estimate equals the marginal entropy
  CHECK_FALSE(rep.to_text().empty());
}

TEST_CASE("intercept experiment") {
  ExperimentConfig cfg;
  cfg.rounds = 20000;
  cfg.test_bits = 20000;
  cfg.master_seed = 5;
  cfg.attack = InterceptAttack{};
  cfg.workers = 2;
  const auto rep = run_experiment(cfg);
  CHECK(rep.detected);
  CHECK(std::abs(rep.detection_frequency - 0.375) < 0.01);
  CHECK(rep.detection_sigma == doctest::Approx(std::sqrt(rep.detection_frequency * (1 - rep.detection_frequency) / 20000)));
  CHECK(rep.final_key_length == 0);
}

TEST_CASE("csv output does not depend on the worker count") {
  for (const char* attack : {"none", "general:0.3,0.6", "intercept", "impersonate:one", "pns:3"}) {
    CAPTURE(attack);
    ExperimentConfig cfg;
    cfg.rounds = 300;
    cfg.test_bits = 30;
    cfg.master_seed = 77;
    cfg.attack = parse_attack(attack);
    cfg.output_path = scratch("w1.csv");
    cfg.workers = 1;
    run_experiment(cfg);
    cfg.output_path = scratch("w8.csv");
    cfg.workers = 8;
    run_experiment(cfg);
    const auto a = slurp(scratch("w1.csv"));
    CHECK(!a.empty());
    CHECK(a == slurp(scratch("w8.csv")));
    CHECK(read_csv(scratch("w1.csv")).rows.size() == 300);
  }
}

TEST_CASE("curves") {
  const auto t = curves_table(0.001);
  REQUIRE(t.header == std::vector<std::string>{"p_d", "I_AB", "I_AE", "p_e", "sum"});
  CHECK(t.rows.front() == std::vector<std::string>{"0", "1", "0", "0.5", "1"});
  bool bracketed = false;
  double prev_ab = 2;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double ab = std::stod(t.rows[i][1]);
    CHECK(ab < prev_ab);
    prev_ab = ab;
    if (i > 0) {
      const double d0 = std::stod(t.rows[i - 1][1]) - std::stod(t.rows[i - 1][2]);
      const double d1 = ab - std::stod(t.rows[i][2]);
      if (d0 > 0 && d1 <= 0) {
        bracketed = true;
        CHECK(std::stod(t.rows[i - 1][0]) < 0.266188);
        CHECK(std::stod(t.rows[i][0]) >= 0.266188);
      }
    }
  }
  CHECK(bracketed);
  const auto p = scratch("curves.csv");
  emit_curves(0.01, p);
  CHECK(read_csv(p) == curves_table(0.01));
  CHECK_THROWS_AS(curves_table(0.0), std::invalid_argument);
  CHECK_THROWS_AS(curves_table(0.5), std::invalid_argument);
}

TEST_CASE("solve report") {
  const auto text = solve_report();
  CHECK(text.find("0.266188") != std::string::npos);
  CHECK(text.find("0.110028") != std::string::npos);
}

#ifdef FQKD_CLI_PATH
TEST_CASE("command line exit codes") {
  const std::string cli = FQKD_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  CHECK(run("solve") == 0);
  CHECK(run("curves --step 0.05 --out " + scratch("cli_curves.csv").string()) == 0);
  CHECK(run("simulate --rounds 50 --test-bits 5 --seed 1 --out " + scratch("cli.csv").string()) == 0);
  CHECK(run("simulate --rounds 50 --test-bits 5 --attack bogus --out " + scratch("cli.csv").string()) == 1);
  CHECK(run("simulate --rounds 5 --test-bits 9 --out " + scratch("cli.csv").string()) == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("simulate --rounds 5 --out /nonexistent-dir/out.csv") == 2);
  CHECK(run("simulate --config " + scratch("nope.cfg").string()) == 2);

  const auto cfg = scratch("run.cfg");
  std::ofstream(cfg) << "rounds = 40\ntest_bits = 4\nseed = 3\nout = " << scratch("cfg.csv").string() << "\n";
  CHECK(run("--workers 2 simulate --config " + cfg.string() + " --rounds 30") == 0);
  CHECK(read_csv(scratch("cfg.csv")).rows.size() == 30);
}
#endif
