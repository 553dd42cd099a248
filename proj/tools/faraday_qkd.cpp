// Command line front end: simulate, curves, solve.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fqkd/errors.hpp"
#include "fqkd/harness.hpp"

namespace {

constexpr int kExitArgument = 1;
constexpr int kExitIo = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace fqkd;

  CLI::App app{"Faraday-rotator QKD simulator"};
  app.require_subcommand(1);

  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads (default: FARADAY_QKD_WORKERS or all cores)");

  auto* sim = app.add_subcommand("simulate", "Run protocol rounds and write a per-round CSV");
  std::uint64_t rounds = 0, test_bits = 0, seed = 0;
  std::string attack, out, config;
  auto* o_rounds = sim->add_option("--rounds", rounds, "Number of rounds N");
  auto* o_test = sim->add_option("--test-bits", test_bits, "Odd key bits compared in verification, M");
  auto* o_seed = sim->add_option("--seed", seed, "Master seed");
  auto* o_attack = sim->add_option(
      "--attack", attack,
      "none | general:cx,cy[,gamma] | intercept[:gamma] | impersonate:one | impersonate:two | pns:3 | pns:4home");
  auto* o_out = sim->add_option("--out", out, "CSV output path");
  sim->add_option("--config", config, "key = value file; flags override it");

  auto* curves = app.add_subcommand("curves", "Write I_AB, I_AE, p_e against p_d as CSV");
  double step = 0.001;
  std::string curves_out;
  curves->add_option("--step", step, "Grid step in p_d");
  curves->add_option("--out", curves_out, "CSV output path")->required();

  app.add_subcommand("solve", "Print the threshold, Eve's optimum and the collective bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    if (sim->parsed()) {
      harness::ExperimentConfig cfg;
      if (!config.empty()) harness::apply_config(harness::read_config_file(config), cfg);
      if (*o_rounds) cfg.rounds = rounds;
      if (*o_test) cfg.test_bits = test_bits;
      if (*o_seed) cfg.master_seed = seed;
      if (*o_attack) cfg.attack = harness::parse_attack(attack);
      if (*o_out) cfg.output_path = out;
      if (app.get_option("--workers")->count()) cfg.workers = workers;
      if (cfg.output_path.empty()) throw std::invalid_argument("simulate needs --out (or 'out' in the config file)");
      const auto report = harness::run_experiment(cfg);
      std::cout << report.to_text();
    } else if (curves->parsed()) {
      harness::emit_curves(step, curves_out);
    } else {
      std::cout << harness::solve_report();
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  }
  return 0;
}
