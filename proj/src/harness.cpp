#include "fqkd/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fqkd/analysis.hpp"
#include "fqkd/errors.hpp"

namespace fqkd::harness {

namespace {

double parse_double(std::string_view s, const char* what) {
  double out = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument(std::string("attack: cannot parse ") + what + " from '" + std::string(s) + "'");
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

struct Prepared {
  std::vector<protocol::ChannelHook> hooks;
  std::optional<adversary::EveStrategy> strategy;
};

Prepared prepare(const AttackSpec& attack) {
  Prepared p;
  if (const auto* g = std::get_if<GeneralAttack>(&attack)) {
    auto spec = adversary::GeneralAttackSpec::symmetric(g->gamma.value_or(EquatorAngle{}), g->c_x, g->c_y);
    p.strategy = adversary::EveStrategy::for_spec(spec);
    if (g->gamma) p.hooks = adversary::general_attack_hooks(spec);
  } else if (const auto* i = std::get_if<InterceptAttack>(&attack)) {
    if (i->gamma) p.hooks = adversary::intercept_resend_hooks(*i->gamma);
  }
  return p;
}

RoundRecord simulate_prepared(const AttackSpec& attack, const Prepared& prep, std::uint64_t seed,
                              std::uint64_t n) {
  CounterRng rng(seed, n);
  RoundRecord rec;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NoAttack>) {
          rec.transcript = protocol::run_round(n, rng, {});
        } else if constexpr (std::is_same_v<T, GeneralAttack>) {
          std::vector<protocol::ChannelHook> own;
          if (!a.gamma) {
            const EquatorAngle gamma(rng.angle());
            own = adversary::general_attack_hooks(adversary::GeneralAttackSpec::symmetric(gamma, a.c_x, a.c_y));
          }
          auto out = protocol::run_round_full(n, rng, a.gamma ? prep.hooks : own);
          const auto guess = adversary::eve_infer_keys(out.final_state, *prep.strategy, rng);
          rec.transcript = out.transcript;
          rec.eve_odd_guess = guess.odd_key();
          rec.eve_even_guess = guess.even_key();
        } else if constexpr (std::is_same_v<T, InterceptAttack>) {
          std::vector<protocol::ChannelHook> own;
          if (!a.gamma) own = adversary::intercept_resend_hooks(EquatorAngle(rng.angle()));
          const auto out = protocol::run_round_full(n, rng, a.gamma ? prep.hooks : own);
          const auto guess = adversary::intercept_guess(out.eve);
          rec.transcript = out.transcript;
          rec.eve_odd_guess = guess.odd_key();
          rec.eve_even_guess = guess.even_key();
        } else if constexpr (std::is_same_v<T, ImpersonationAttack>) {
          const auto r = adversary::impersonation_round(a.variant, n, rng);
          rec.transcript = r.transcript;
          rec.eve_odd_guess = r.eve_with_alice.first;
          rec.eve_even_guess = r.eve_with_alice.second;
        } else if constexpr (std::is_same_v<T, PnsAttack>) {
          const auto r = adversary::pns_round(a.variant, n, rng);
          rec.transcript = r.transcript;
          rec.eve_odd_guess = r.eve_odd_guess;
          rec.trace_distance = r.trace_distance;
        }
      },
      attack);
  return rec;
}

double binomial_sigma(double p, std::size_t n) {
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::string opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

std::string fixed6(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

AttackSpec parse_attack(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "none" && arg.empty()) return NoAttack{};
  if (kind == "general") {
    const auto parts = split(arg, ',');
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument("attack general expects general:cx,cy[,gamma]");
    GeneralAttack g{parse_double(parts[0], "cx"), parse_double(parts[1], "cy"), std::nullopt};
    if (parts.size() == 3) g.gamma = EquatorAngle(parse_double(parts[2], "gamma"));
    adversary::GeneralAttackSpec::symmetric({}, g.c_x, g.c_y);
    return g;
  }
  if (kind == "intercept") {
    if (colon == std::string_view::npos || arg == "random") return InterceptAttack{};
    return InterceptAttack{EquatorAngle(parse_double(arg, "gamma"))};
  }
  if (kind == "impersonate") {
    if (arg == "one") return ImpersonationAttack{adversary::ImpersonationVariant::OneHome};
    if (arg == "two") return ImpersonationAttack{adversary::ImpersonationVariant::TwoHomes};
  }
  if (kind == "pns") {
    if (arg == "3") return PnsAttack{adversary::PnsVariant::ThreePhoton};
    if (arg == "4home") return PnsAttack{adversary::PnsVariant::FourHome};
  }
  throw std::invalid_argument("unknown attack '" + std::string(text) + "'");
}

std::string to_string(const AttackSpec& attack) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NoAttack>) {
          return "none";
        } else if constexpr (std::is_same_v<T, GeneralAttack>) {
          std::string s = "general:" + format_number(a.c_x) + "," + format_number(a.c_y);
          if (a.gamma) s += "," + format_number(a.gamma->radians());
          return s;
        } else if constexpr (std::is_same_v<T, InterceptAttack>) {
          return a.gamma ? "intercept:" + format_number(a.gamma->radians()) : "intercept";
        } else if constexpr (std::is_same_v<T, ImpersonationAttack>) {
          return a.variant == adversary::ImpersonationVariant::OneHome ? "impersonate:one" : "impersonate:two";
        } else {
          return a.variant == adversary::PnsVariant::ThreePhoton ? "pns:3" : "pns:4home";
        }
      },
      attack);
}

void ExperimentConfig::validate() const {
  if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (test_bits > rounds) throw std::invalid_argument("test_bits must not exceed rounds");
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FARADAY_QKD_WORKERS"); env && *env) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::invalid_argument("FARADAY_QKD_WORKERS must be a non-negative integer");
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RoundRecord simulate_round(const AttackSpec& attack, std::uint64_t master_seed, std::uint64_t n) {
  return simulate_prepared(attack, prepare(attack), master_seed, n);
}

ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg.attack);
  const std::size_t n_rounds = cfg.rounds;

  ExperimentResult res;
  res.records.resize(n_rounds);
  const unsigned workers = std::min<std::size_t>(resolve_workers(cfg.workers), n_rounds);
  constexpr std::size_t kChunk = 256;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      while (!failed.load()) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= n_rounds) break;
        const std::size_t end = std::min(n_rounds, begin + kChunk);
        for (std::size_t n = begin; n < end; ++n)
          res.records[n] = simulate_prepared(cfg.attack, prep, cfg.master_seed, n);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<protocol::RoundTranscript> transcripts;
  transcripts.reserve(n_rounds);
  for (const auto& r : res.records) transcripts.push_back(r.transcript);
  CounterRng vrng(cfg.master_seed, kVerificationStream);
  const auto verification = protocol::verify_keys(transcripts, cfg.test_bits, vrng);
  for (std::size_t n = 0; n < n_rounds; ++n) res.records[n].transcript.used_for_test = transcripts[n].used_for_test;
  const auto ledger = protocol::build_ledger(transcripts, verification);

  RunReport& rep = res.report;
  rep.config = cfg;
  rep.rounds = n_rounds;
  rep.tested = verification.tested.size();
  rep.test_mismatches = verification.mismatches;
  rep.detected = verification.detected;
  rep.detection_frequency = rep.tested ? static_cast<double>(rep.test_mismatches) / rep.tested
                                       : std::numeric_limits<double>::quiet_NaN();
  rep.detection_sigma = rep.tested ? binomial_sigma(rep.detection_frequency, rep.tested)
                                   : std::numeric_limits<double>::quiet_NaN();

  std::size_t odd_mis = 0, even_mis = 0, eve_odd_ok = 0, eve_even_ok = 0, eve_odd_n = 0, eve_even_n = 0;
  analysis::JointCounts ab{}, ae{};
  std::optional<double> td_min;
  for (const auto& r : res.records) {
    const auto& t = r.transcript;
    odd_mis += t.alice_bits.first != t.bob_bits.first;
    even_mis += t.alice_bits.second != t.bob_bits.second;
    ++ab[t.alice_bits.first][t.bob_bits.first];
    if (r.eve_odd_guess >= 0) {
      ++eve_odd_n;
      eve_odd_ok += r.eve_odd_guess == t.alice_bits.first;
      ++ae[t.alice_bits.first][r.eve_odd_guess];
    }
    if (r.eve_even_guess >= 0) {
      ++eve_even_n;
      eve_even_ok += r.eve_even_guess == t.alice_bits.second;
    }
    if (r.trace_distance) td_min = td_min ? std::min(*td_min, *r.trace_distance) : *r.trace_distance;
  }
  const double nn = static_cast<double>(n_rounds);
  rep.odd_mismatch_rate = odd_mis / nn;
  rep.odd_mismatch_sigma = binomial_sigma(rep.odd_mismatch_rate, n_rounds);
  rep.even_mismatch_rate = even_mis / nn;
  rep.mutual_info_ab = analysis::empirical_mutual_information(ab);
  if (eve_odd_n) {
    rep.eve_odd_accuracy = static_cast<double>(eve_odd_ok) / eve_odd_n;
    rep.mutual_info_ae = analysis::empirical_mutual_information(ae);
  }
  if (eve_even_n) rep.eve_even_accuracy = static_cast<double>(eve_even_ok) / eve_even_n;
  rep.min_trace_distance = td_min;
  rep.final_key_length = ledger.detected ? 0 : protocol::final_key(ledger, protocol::Party::Alice).size();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  auto res = run_experiment_detailed(cfg);
  if (!cfg.output_path.empty()) write_csv(rounds_table(res.records), cfg.output_path);
  return res.report;
}

CsvTable rounds_table(const std::vector<RoundRecord>& records) {
  CsvTable t;
  t.header = {"round",    "alpha",    "beta",    "alice_c", "bob_d",  "alice_z", "bob_z",  "alice_k1",
              "alice_k2", "bob_k1",   "bob_k2",  "tested",  "eve_k1", "eve_k2",  "eve_trace_distance"};
  t.rows.reserve(records.size());
  auto guess = [](int g) { return g < 0 ? std::string() : std::to_string(g); };
  for (const auto& r : records) {
    const auto& x = r.transcript;
    t.rows.push_back({std::to_string(x.round_index), format_number(x.alpha.radians()),
                      format_number(x.beta.radians()), std::to_string(x.outcome_alice_c),
                      std::to_string(x.outcome_bob_d), std::to_string(x.outcome_alice_a_z),
                      std::to_string(x.outcome_bob_b_z), std::to_string(x.alice_bits.first),
                      std::to_string(x.alice_bits.second), std::to_string(x.bob_bits.first),
                      std::to_string(x.bob_bits.second), x.used_for_test ? "1" : "0", guess(r.eve_odd_guess),
                      guess(r.eve_even_guess), r.trace_distance ? format_number(*r.trace_distance) : ""});
  }
  return t;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "attack              " << to_string(config.attack) << '\n'
     << "rounds              " << rounds << '\n'
     << "seed                " << config.master_seed << '\n'
     << "tested bits         " << tested << '\n'
     << "test mismatches     " << test_mismatches << '\n'
     << "detected            " << (detected ? "yes" : "no") << '\n'
     << "detection frequency " << fixed6(detection_frequency) << " +/- " << fixed6(detection_sigma) << '\n'
     << "odd-bit mismatch    " << fixed6(odd_mismatch_rate) << " +/- " << fixed6(odd_mismatch_sigma) << '\n'
     << "even-bit mismatch   " << fixed6(even_mismatch_rate) << '\n'
     << "eve odd accuracy    " << opt(eve_odd_accuracy) << '\n'
     << "eve even accuracy   " << opt(eve_even_accuracy) << '\n'
     << "I(A,B) empirical    " << fixed6(mutual_info_ab) << '\n'
     << "I(A,E) empirical    " << opt(mutual_info_ae) << '\n'
     << "min trace distance  " << opt(min_trace_distance) << '\n'
     << "final key length    " << final_key_length << '\n'
     << "wall time [s]       " << fixed6(wall_seconds) << '\n';
  return os.str();
}

CsvTable curves_table(double step) {
  const auto curve = analysis::sum_information_curve(step);
  CsvTable t;
  t.header = {"p_d", "I_AB", "I_AE", "p_e", "sum"};
  for (const auto& pt : curve)
    t.rows.push_back({format_number(pt.p_d), format_number(pt.i_ab), format_number(pt.i_ae),
                      format_number(pt.p_e), format_number(pt.sum())});
  return t;
}

void emit_curves(double step, const std::filesystem::path& path) { write_csv(curves_table(step), path); }

std::string solve_report() {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "quantity          p_d\n"
                "threshold         %.6f\n"
                "eve_optimum       %.6f\n"
                "collective_bound  %.6f\n",
                analysis::find_security_threshold(), analysis::find_eve_optimum(), analysis::collective_bound());
  return buf;
}

}  // namespace fqkd::harness
