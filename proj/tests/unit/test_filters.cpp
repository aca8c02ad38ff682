#include <doctest.h>

#include <cmath>
#include <random>
#include <speclift/filters.hpp>

using namespace speclift;

TEST_CASE("smooth filter plateau, support, and transition values") {
  const auto h = make_filter(4);
  CHECK(h(0.25) == 1.0);
  CHECK(h(0.0) == 1.0);
  CHECK(h(0.499999) == 1.0);
  CHECK(h(1.0) == 0.0);
  CHECK(h(1.5) == 0.0);
  const double mid = h(0.6);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(h(0.6) >= h(0.8));
}

TEST_CASE("cutoff filter is the indicator of [0,1)") {
  const auto h = make_cutoff_filter();
  CHECK(h(0.99) == 1.0);
  CHECK(h(1.0) == 0.0);
  CHECK(h(0.0) == 1.0);
  CHECK(h.smoothness_order() == 0);
  CHECK_FALSE(h.is_smooth());
}

TEST_CASE("transition is midpoint-symmetric for the default profile") {
  const auto h = make_filter(5);
  for (double delta : {0.01, 0.05, 0.1, 0.2, 0.24}) {
    CHECK(h(0.75 - delta) + h(0.75 + delta) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("filter is even and rejects NaN") {
  const auto h = make_filter(3);
  for (double u : {0.1, 0.6, 0.9, 1.2}) CHECK(h(-u) == h(u));
  CHECK_THROWS_AS(h(std::nan("")), std::invalid_argument);
}

TEST_CASE("order zero is rejected by the smooth constructor") {
  CHECK_THROWS_AS(make_filter(0), std::invalid_argument);
  CHECK_THROWS_AS(make_filter(-2), std::invalid_argument);
}

TEST_CASE("monotone non-increasing over random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.5);
  for (const auto& h : {make_filter(2), make_filter(6),
                        make_filter(1, FilterProfile::ExpPlateau)}) {
    for (int trial = 0; trial < 2000; ++trial) {
      double u = dist(rng), v = dist(rng);
      if (u > v) std::swap(u, v);
      CHECK(h(u) >= h(v));
    }
    CHECK(h(0.3) == 1.0);
    CHECK(h(1.0) == 0.0);
  }
}

// k-th divided differences across the knots converge as the step shrinks,
// which is what C^k membership looks like numerically
TEST_CASE("numerical smoothness at the knots up to the stated order") {
  const int order = 4;
  const auto h = make_filter(order);
  auto divided_difference = [&](double center, int k, double step) {
    // central k-th difference quotient
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double binom = std::round(std::tgamma(k + 1.0) /
                                      (std::tgamma(i + 1.0) * std::tgamma(k - i + 1.0)));
      const double sign = (k - i) % 2 == 0 ? 1.0 : -1.0;
      acc += sign * binom * h(center + (i - k / 2.0) * step);
    }
    return acc / std::pow(step, k);
  };
  for (double knot : {0.5, 1.0}) {
    for (int k = 1; k <= order; ++k) {
      const double d1 = divided_difference(knot, k, 8e-3);
      const double d2 = divided_difference(knot, k, 4e-3);
      const double d3 = divided_difference(knot, k, 2e-3);
      CHECK(std::fabs(d3) < 1e7);  // bounded through the knot
      const double gap_coarse = std::fabs(d2 - d1);
      const double gap_fine = std::fabs(d3 - d2);
      // Cauchy-style contraction of successive estimates
      CHECK(gap_fine <= 0.9 * gap_coarse + 1e-5 * (1.0 + std::fabs(d3)));
    }
  }
}

TEST_CASE("exp profile has exact plateau and support as well") {
  const auto h = make_filter(1, FilterProfile::ExpPlateau);
  CHECK(h(0.49) == 1.0);
  CHECK(h(1.0) == 0.0);
  CHECK(h(0.75) == doctest::Approx(0.5).epsilon(1e-12));
}
