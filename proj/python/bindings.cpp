#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqkd/adversary.hpp"
#include "fqkd/analysis.hpp"
#include "fqkd/harness.hpp"
#include "fqkd/impersonation.hpp"
#include "fqkd/pns.hpp"
#include "fqkd/protocol.hpp"

namespace py = pybind11;
using namespace fqkd;

namespace {

std::vector<Complex> amplitudes(const StateVector& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

py::dict transcript_dict(const protocol::RoundTranscript& t) {
  py::dict d;
  d["round"] = t.round_index;
  d["alpha"] = t.alpha.radians();
  d["beta"] = t.beta.radians();
  d["alice_c"] = t.outcome_alice_c;
  d["bob_d"] = t.outcome_bob_d;
  d["alice_z"] = t.outcome_alice_a_z;
  d["bob_z"] = t.outcome_bob_b_z;
  d["alice_bits"] = py::make_tuple(t.alice_bits.first, t.alice_bits.second);
  d["bob_bits"] = py::make_tuple(t.bob_bits.first, t.bob_bits.second);
  return d;
}

adversary::PnsVariant pns_variant(const std::string& name) {
  if (name == "3") return adversary::PnsVariant::ThreePhoton;
  if (name == "4home") return adversary::PnsVariant::FourHome;
  throw std::invalid_argument("PNS variant must be '3' or '4home'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Faraday-rotator QKD simulator";

  m.def("equator_state", [](double phi) { return amplitudes(make_equator_state(EquatorAngle(phi))); }, py::arg("phi"));
  m.def("state_after_step3", [](double alpha) { return amplitudes(protocol::state_after_step3(EquatorAngle(alpha))); },
        py::arg("alpha"), "(A, C) amplitudes, A as bit 0.");
  m.def("state_before_measurement",
        [](double alpha, double beta) {
          return amplitudes(protocol::state_before_measurement(EquatorAngle(alpha), EquatorAngle(beta)));
        },
        py::arg("alpha"), py::arg("beta"));

  m.def("run_round",
        [](std::uint64_t seed, std::uint64_t n) {
          CounterRng rng(seed, n);
          return transcript_dict(protocol::run_round(n, rng, {}));
        },
        py::arg("seed"), py::arg("n"));

  m.def("detection_probability", &analysis::detection_probability, py::arg("c_x"), py::arg("c_y"));
  m.def("detection_probability_from_final_state", &analysis::detection_probability_from_final_state, py::arg("c_x"),
        py::arg("c_y"));
  m.def("binary_entropy", &analysis::binary_entropy, py::arg("p"));
  m.def("mutual_info_ab", &analysis::mutual_info_ab, py::arg("p_d"));
  m.def("mutual_info_ae", &analysis::mutual_info_ae, py::arg("p_d"));
  m.def("eve_error", &analysis::eve_error, py::arg("p_d"));
  m.def("find_security_threshold", &analysis::find_security_threshold);
  m.def("find_eve_optimum", &analysis::find_eve_optimum);
  m.def("collective_bound", &analysis::collective_bound);
  m.def("curves",
        [](double step) {
          std::vector<py::tuple> rows;
          for (const auto& p : analysis::security_curve(step)) rows.push_back(py::make_tuple(p.p_d, p.i_ab, p.i_ae, p.p_e));
          return rows;
        },
        py::arg("step") = 0.001, "Rows (p_d, I_AB, I_AE, p_e).");

  m.def("simulate",
        [](std::uint64_t rounds, std::uint64_t test_bits, std::uint64_t seed, const std::string& attack,
           unsigned workers) {
          harness::ExperimentConfig cfg;
          cfg.rounds = rounds;
          cfg.test_bits = test_bits;
          cfg.master_seed = seed;
          cfg.attack = harness::parse_attack(attack);
          cfg.workers = workers;
          harness::RunReport r;
          {
            py::gil_scoped_release release;
            r = harness::run_experiment_detailed(cfg).report;
          }
          py::dict d;
          d["rounds"] = r.rounds;
          d["tested"] = r.tested;
          d["detected"] = r.detected;
          d["detection_frequency"] = r.detection_frequency;
          d["detection_sigma"] = r.detection_sigma;
          d["odd_mismatch_rate"] = r.odd_mismatch_rate;
          d["eve_odd_accuracy"] = r.eve_odd_accuracy;
          d["eve_even_accuracy"] = r.eve_even_accuracy;
          d["mutual_info_ab"] = r.mutual_info_ab;
          d["mutual_info_ae"] = r.mutual_info_ae;
          d["final_key_length"] = r.final_key_length;
          return d;
        },
        py::arg("rounds"), py::arg("test_bits") = 0, py::arg("seed") = 0, py::arg("attack") = "none",
        py::arg("workers") = 1);

  m.def("impersonation",
        [](const std::string& variant, std::uint64_t seed, std::size_t rounds) {
          using adversary::ImpersonationVariant;
          ImpersonationVariant v;
          if (variant == "one") v = ImpersonationVariant::OneHome;
          else if (variant == "two") v = ImpersonationVariant::TwoHomes;
          else throw std::invalid_argument("impersonation variant must be 'one' or 'two'");
          const auto r = adversary::impersonation_report(v, seed, rounds);
          py::dict d;
          d["detection_frequency"] = r.detection_frequency;
          d["eve_alice_odd_agreement"] = r.eve_alice_odd_agreement;
          d["odd_bit_correlation"] = r.odd_bit_correlation;
          return d;
        },
        py::arg("variant"), py::arg("seed"), py::arg("rounds"));

  m.def("pns_leakage",
        [](const std::string& variant, std::uint64_t seed, std::size_t rounds, bool eve_has_photons) {
          const auto r = adversary::pns_leakage(pns_variant(variant), seed, rounds, eve_has_photons);
          py::dict d;
          d["eve_key_accuracy"] = r.eve_key_accuracy;
          d["detection_frequency"] = r.detection_frequency;
          d["trace_distance"] = r.trace_distance;
          d["angle_blind_trace_distance"] = r.angle_blind_trace_distance;
          return d;
        },
        py::arg("variant"), py::arg("seed"), py::arg("rounds"), py::arg("eve_has_photons") = true);
}
