#include <stdexcept>

#include "fqkd/adversary.hpp"

namespace fqkd::adversary {

namespace {

protocol::HookFn measure_hook(int travel, EquatorAngle basis) {
  return [=](StateVector& s, CounterRng& rng, protocol::EveRecord& eve) {
    eve.outcomes.push_back(measure_equator_inplace(s, travel, basis, rng).outcome);
  };
}

}  // namespace

std::vector<protocol::ChannelHook> intercept_resend_hooks(EquatorAngle gamma) {
  using protocol::Leg;
  namespace pr = protocol::reg;
  const EquatorAngle ret = gamma.rotated(kPi / 2.0);
  return {
      {Leg::CAliceToBob, measure_hook(pr::C, gamma)},
      {Leg::CBobToAlice, measure_hook(pr::C, ret)},
      {Leg::DBobToAlice, measure_hook(pr::D, gamma)},
      {Leg::DAliceToBob, measure_hook(pr::D, ret)},
  };
}

EveGuess intercept_guess(const protocol::EveRecord& record) {
  if (record.outcomes.size() != 4)
    throw std::invalid_argument("intercept_guess: expected four intercept outcomes");
  const auto& o = record.outcomes;
  EveGuess g;
  g.bob_home = o[0] == o[1] ? 0 : 1;
  g.alice_home = o[2] == o[3] ? 0 : 1;
  return g;
}

}  // namespace fqkd::adversary
