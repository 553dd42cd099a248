#include <doctest.h>

#include <cmath>

#include "fqkd/analysis.hpp"
#include "support.hpp"

using namespace fqkd::analysis;

namespace {

double h(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("detection probability closed form") {
  CHECK(detection_probability(0, 0) == 0.375);
  CHECK(detection_probability(1, 1) == 0.0);
  CHECK(detection_probability(1, 0) == 0.25);
  CHECK(detection_probability(0.5, 0.8) == doctest::Approx(0.24375));
  CHECK_THROWS(detection_probability(1.1, 0));
  CHECK_THROWS(detection_probability(0, -0.1));
  for (double c = 0; c <= 1.0; c += 0.05)
    CHECK(detection_probability(c, c) == doctest::Approx(detection_probability_from_final_state(c, c)));
  CHECK(detection_probability_from_final_state(0.5, 0.8) == doctest::Approx(0.255));
}

TEST_CASE("detection probability is monotone in each overlap") {
  for (double fixed = 0; fixed <= 1.0; fixed += 0.1)
    for (double c = 0; c + 0.01 <= 1.0; c += 0.01) {
      CHECK(detection_probability(c + 0.01, fixed) <= detection_probability(c, fixed));
      CHECK(detection_probability(fixed, c + 0.01) <= detection_probability(fixed, c));
    }
}

TEST_CASE("entropies and informations") {
  CHECK(binary_entropy(0) == 0);
  CHECK(binary_entropy(1) == 0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(mutual_info_ab(0) == 1.0);
  CHECK(eve_error(0) == doctest::Approx(0.5));
  CHECK(mutual_info_ae(0) == doctest::Approx(0.0));
  CHECK(eve_error(0.375) == doctest::Approx(0.25));
  CHECK(mutual_info_ae(0.375) == doctest::Approx(1 - h(0.25)).epsilon(1e-12));
  CHECK(mutual_info_ae(0.375) == doctest::Approx(0.1887).epsilon(1e-3));
  CHECK(std::abs(eve_error(0.266188) - 0.266188) < 1e-4);
  CHECK_THROWS_AS(eve_error(0.6), std::domain_error);
  CHECK_THROWS_AS(mutual_info_ab(-0.1), std::domain_error);
  for (double p = 0; p <= 0.375; p += 0.005) CHECK(mutual_info_ae(p) == doctest::Approx(1 - h(eve_error(p))));
}

TEST_CASE("balanced overlap inverts the closed form") {
  for (double c = 0; c <= 1.0; c += 0.1) CHECK(balanced_overlap_for(detection_probability(c, c)) == doctest::Approx(c));
}

TEST_CASE("security threshold") {
  const double t = find_security_threshold();
  CHECK(std::abs(t - 0.266188) < 1e-5);
  CHECK(t > kPingPongDetection);
  CHECK(t > kBb84Detection);
  CHECK(std::abs(mutual_info_ab(t) - mutual_info_ae(t)) < 1e-8);
}

TEST_CASE("Eve's optimum") {
  const double p = find_eve_optimum();
  CHECK(std::abs(p - 0.345) < 0.005);
  CHECK(mutual_info_ae(p) > mutual_info_ae(0.375));
  CHECK(mutual_info_ae(p) == doctest::Approx(0.194).epsilon(0.005));
}

TEST_CASE("collective bound") {
  const double p = collective_bound();
  CHECK(std::abs(p - 0.110028) < 1e-5);
  CHECK(std::abs(h(p) - 0.5) < 1e-8);
  CHECK(solve_entropy_level(1.0) == doctest::Approx(0.5));
}

TEST_CASE("security curves") {
  const auto curve = security_curve(0.001);
  REQUIRE(curve.size() > 2);
  CHECK(curve.front().p_d == 0.0);
  CHECK(curve.back().p_d == 0.375);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].p_d > curve[i - 1].p_d);
    CHECK(curve[i].i_ab < curve[i - 1].i_ab);
    CHECK(curve[i].sum() < 1.0);
  }
  const auto sums = sum_information_curve(0.01);
  CHECK(sums.front().sum() == 1.0);
  const double t = find_security_threshold();
  CHECK(security_point(t).sum() == doctest::Approx(2 * mutual_info_ab(t)));
  CHECK(security_point(t).sum() == doctest::Approx(0.328).epsilon(1e-3));
}

TEST_CASE("empirical mutual information") {
  CHECK(empirical_mutual_information({{{100, 0}, {0, 100}}}) == doctest::Approx(1.0));
  CHECK(empirical_mutual_information({{{100, 100}, {100, 100}}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(empirical_mutual_information({{{0, 0}, {0, 0}}}), std::invalid_argument);

  auto r = test::rng_for(80);
  JointCounts bsc{};
  for (int i = 0; i < 1000000; ++i) {
    const int x = r.bernoulli(0.5);
    const int y = x ^ static_cast<int>(r.bernoulli(0.25));
    bsc[x][y]++;
  }
  CHECK(std::abs(empirical_mutual_information(bsc) - (1 - h(0.25))) < 0.01);
}
