#pragma once

#include <array>
#include <cstdint>

namespace fqkd {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream tags for draws that do not belong to a single protocol round.
inline constexpr std::uint64_t kVerificationStream = 0xF000'0000'0000'0001ULL;
inline constexpr std::uint64_t kAnalysisStream = 0xF000'0000'0000'0002ULL;

/// Counter-based generator. Every draw is philox(key = seed,
/// counter = (draw_index, stream)), so a (seed, stream) pair fully
/// determines the sequence and streams never share state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, 2π).
  double angle();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
};

}  // namespace fqkd
