#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fqkd::analysis {

inline constexpr double kMaxDetection = 3.0 / 8.0;
inline constexpr double kBb84Detection = 0.15;
inline constexpr double kPingPongDetection = 0.18;

/// Closed form for the collective attack with ancilla overlaps c_x, c_y.
/// Exact for balanced attacks; see detection_probability_from_final_state
/// for c_x ≠ c_y.
double detection_probability(double c_x, double c_y);
/// Mismatch probability averaged over α, β of the post-attack state:
/// 3/8 − (2 c_x c_y + c_x² c_y²)/8.
double detection_probability_from_final_state(double c_x, double c_y);

/// h(p) in bits with 0·log 0 = 0.
double binary_entropy(double p);
double mutual_info_ab(double p_d);
/// Eve's error rate on the odd key bit at detection probability p_d.
double eve_error(double p_d);
double mutual_info_ae(double p_d);

/// Balanced overlap c with detection_probability(c, c) = p_d.
double balanced_overlap_for(double p_d);

/// Root of I_AB − I_AE on (0, 3/8) by bisection.
double find_security_threshold();
/// Maximizer of I_AE on [0, 3/8] by golden-section search.
double find_eve_optimum();
/// p in (0, 1/2) with h(p) = level, by bisection.
double solve_entropy_level(double level);
/// Error rate at which I_AB per bit drops to 1/2.
double collective_bound();

struct SecurityPoint {
  double p_d = 0.0;
  double p_e = 0.5;
  double i_ab = 1.0;
  double i_ae = 0.0;
  double sum() const { return i_ab + i_ae; }
};

SecurityPoint security_point(double p_d);

/// Grid 0, step, 2·step, ... ending exactly at 3/8.
std::vector<SecurityPoint> security_curve(double step);
/// Throws std::logic_error if the sum exceeds 1 anywhere.
std::vector<SecurityPoint> sum_information_curve(double step);

/// counts[x][y] for two binary variables.
using JointCounts = std::array<std::array<std::uint64_t, 2>, 2>;
double empirical_mutual_information(const JointCounts& counts);

}  // namespace fqkd::analysis
