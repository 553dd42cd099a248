#include <doctest.h>

#include <cmath>
#include <set>

#include "fqkd/rng.hpp"

using fqkd::CounterRng;
using fqkd::philox4x32;

// Known-answer vectors published with the Random123 distribution (kat_vectors).
TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and independent") {
  CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    seen.insert(x);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 300);
  CHECK(a.draws() == 100);
}

TEST_CASE("uniform, angle and below stay in range") {
  CounterRng r(1, 1);
  double mean = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    mean += u;
    const double t = r.angle();
    REQUIRE(t >= 0.0);
    REQUIRE(t < 2 * M_PI);
    REQUIRE(r.below(7) < 7);
  }
  CHECK(std::abs(mean / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK_THROWS(r.below(0));
}
