#include "fqkd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fqkd::analysis {

namespace {

void check_overlap(double c, const char* name) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void check_detection(double p_d) {
  if (!(p_d >= 0.0 && p_d <= kMaxDetection + 1e-12))
    throw std::domain_error("detection probability must lie in [0, 3/8], got " + std::to_string(p_d));
}

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo * fhi > 0.0) throw std::logic_error("bisection bracket does not straddle a root");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double detection_probability(double c_x, double c_y) {
  check_overlap(c_x, "c_x");
  check_overlap(c_y, "c_y");
  return kMaxDetection - (c_x * c_x + c_y * c_y + c_x * c_x * c_y * c_y) / 8.0;
}

double detection_probability_from_final_state(double c_x, double c_y) {
  check_overlap(c_x, "c_x");
  check_overlap(c_y, "c_y");
  return kMaxDetection - (2.0 * c_x * c_y + c_x * c_x * c_y * c_y) / 8.0;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double mutual_info_ab(double p_d) {
  check_detection(p_d);
  return 1.0 - binary_entropy(p_d);
}

double eve_error(double p_d) {
  if (!(p_d >= 0.0 && p_d <= 0.5)) throw std::domain_error("eve_error: p_d outside [0, 1/2]");
  const double r = std::sqrt(1.0 - 2.0 * p_d);
  return 0.5 - 0.5 * r * (1.0 - r) * (2.0 * r + std::sqrt(2.0 * (1.0 - r)));
}

double mutual_info_ae(double p_d) {
  check_detection(p_d);
  return 1.0 - binary_entropy(eve_error(p_d));
}

double balanced_overlap_for(double p_d) {
  check_detection(p_d);
  // 3/8 − (2c² + c⁴)/8 = p_d  ⇒  (c² + 1)² = 4 − 8 p_d
  const double c2 = std::sqrt(std::max(0.0, 4.0 - 8.0 * p_d)) - 1.0;
  return std::sqrt(std::clamp(c2, 0.0, 1.0));
}

double find_security_threshold() {
  return bisect([](double p) { return mutual_info_ab(p) - mutual_info_ae(p); }, 1e-9, kMaxDetection - 1e-9,
                1e-12);
}

double find_eve_optimum() {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = kMaxDetection;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = mutual_info_ae(x1), f2 = mutual_info_ae(x2);
  while (b - a > 1e-9) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = mutual_info_ae(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = mutual_info_ae(x1);
    }
  }
  return 0.5 * (a + b);
}

double solve_entropy_level(double level) {
  if (!(level >= 0.0 && level <= 1.0)) throw std::domain_error("entropy level outside [0, 1]");
  if (level >= 1.0) return 0.5;
  if (level <= 0.0) return 0.0;
  return bisect([level](double p) { return binary_entropy(p) - level; }, 0.0, 0.5, 1e-14);
}

double collective_bound() { return solve_entropy_level(0.5); }

SecurityPoint security_point(double p_d) {
  check_detection(p_d);
  SecurityPoint pt;
  pt.p_d = p_d;
  pt.p_e = eve_error(p_d);
  pt.i_ab = 1.0 - binary_entropy(p_d);
  pt.i_ae = 1.0 - binary_entropy(pt.p_e);
  return pt;
}

std::vector<SecurityPoint> security_curve(double step) {
  if (!(step > 0.0 && step < kMaxDetection)) throw std::invalid_argument("grid step must lie in (0, 3/8)");
  std::vector<SecurityPoint> out;
  const auto n = static_cast<std::size_t>(std::floor(kMaxDetection / step + 1e-9));
  out.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) out.push_back(security_point(std::min(kMaxDetection, k * step)));
  if (out.back().p_d < kMaxDetection) out.push_back(security_point(kMaxDetection));
  return out;
}

std::vector<SecurityPoint> sum_information_curve(double step) {
  auto curve = security_curve(step);
  for (const auto& pt : curve)
    if (pt.sum() > 1.0 + 1e-12)
      throw std::logic_error("I_AB + I_AE exceeds one bit at p_d = " + std::to_string(pt.p_d));
  return curve;
}

double empirical_mutual_information(const JointCounts& counts) {
  double total = 0.0;
  for (const auto& row : counts)
    for (auto c : row) total += static_cast<double>(c);
  if (total <= 0.0) throw std::invalid_argument("empirical_mutual_information: empty table");
  double px[2] = {0, 0}, py[2] = {0, 0};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double p = counts[x][y] / total;
      px[x] += p;
      py[y] += p;
    }
  double mi = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double p = counts[x][y] / total;
      if (p > 0.0) mi += p * std::log2(p / (px[x] * py[y]));
    }
  return std::max(0.0, mi);
}

}  // namespace fqkd::analysis
