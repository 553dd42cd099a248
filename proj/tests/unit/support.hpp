#pragma once

#include <cmath>
#include <cstdint>

#include "fqkd/rng.hpp"
#include "fqkd/state_vector.hpp"

namespace test {

/// Per-test stream so suites never share draws.
inline fqkd::CounterRng rng_for(std::uint64_t tag) { return fqkd::CounterRng(0x7e57, tag); }

inline double sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

inline bool near(fqkd::Complex a, fqkd::Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace test
