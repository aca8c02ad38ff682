#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <speclift/approximation.hpp>
#include <speclift/directed_pair.hpp>
#include <speclift/jacobi.hpp>

#include "support/oracles.hpp"

using namespace speclift;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("lowest-degree orthonormal Jacobi values") {
  const JacobiBasis legendre(0.0, 0.0, 3);
  CHECK(legendre.eval(0, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(legendre.eval(0, -0.9) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  for (double x : {-0.8, -0.1, 0.4, 1.0})
    CHECK(legendre.eval(1, x) == doctest::Approx(std::sqrt(1.5) * x).epsilon(1e-14));
  CHECK_THROWS_AS(legendre.eval(1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(legendre.eval(7, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature Gram matrix is the identity up to degree 30") {
  const int degree = 30;
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
      const JacobiBasis basis(alpha, beta, degree);
      const testing::WeightedRule rule =
          testing::jacobi_weight_rule(alpha, beta, 2 * degree);
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
      for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
        const Eigen::VectorXd values = basis.eval_all(rule.nodes(q));
        gram += rule.weights(q) * values * values.transpose();
      }
      gram.diagonal().array() -= 1.0;
      CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const QuadratureRule rule = gauss_legendre(12);
  CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights(i) * std::pow(rule.nodes(i), 22);
  CHECK(acc == doctest::Approx(2.0 / 23.0).epsilon(1e-13));
}

TEST_CASE("quadratic-transformation identity, explicit low case") {
  const auto check = verify_jacobi_ultra(0.0, 0, 0.0);
  CHECK(check.lhs == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(check.abs_diff < 1e-14);

  // both sides vanish on the equator
  const auto equator = verify_jacobi_ultra(2.0, 3, kPi / 2.0);
  CHECK(std::fabs(check.rhs - check.lhs) < 1e-14);
  CHECK(std::fabs(equator.lhs) < 1e-12);
  CHECK(std::fabs(equator.rhs) < 1e-12);
}

TEST_CASE("quadratic-transformation identity over the sampled grid") {
  double worst = 0.0;
  for (double alpha : {0.0, 1.0, 2.0, 3.0})
    for (int j = 0; j <= 20; ++j)
      for (int s = 0; s < 50; ++s) {
        const double theta = kPi / 2.0 * s / 49.0;
        worst = std::max(worst, verify_jacobi_ultra(alpha, j, theta).abs_diff);
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("connection coefficient at j=k=0 matches the Beta-integral form") {
  for (int m : {0, 1, 3}) {
    const JacobiBasis left(m, 0.5, 0);
    const JacobiBasis right(m, 1.0, 0);
    const double weight_integral =
        std::pow(2.0, m + 2) * std::beta(m + 1.0, 2.0);
    const double expected =
        left.eval(0, 0.0) * right.eval(0, 0.0) * weight_integral;
    CHECK(connection_coeff(m, 0, 0) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(connection_coeff(0, 1, 2), std::invalid_argument);
}

TEST_CASE("circle system: exact discrete orthonormality and spectrum") {
  const SpectralSystem circle = build_circle_system(256, 50);
  CHECK(orthonormality_residual(circle) < 1e-12);
  CHECK(circle.eigenvalues(0) == 0.0);
  const auto constant = circle.eigenfunctions.col(0);
  CHECK((constant.array() - constant(0)).abs().maxCoeff() < 1e-15);
  CHECK(circle.eigenvalues(1) == 1.0);
  CHECK(circle.eigenvalues(2) == 1.0);
  CHECK(circle.eigenvalues(3) == 2.0);
  CHECK_THROWS_AS(build_circle_system(100, 50), std::invalid_argument);
}

TEST_CASE("circle heat kernel diagonal scales like t^{-1/2}") {
  const SpectralSystem circle = build_circle_system(256, 100);
  std::vector<double> log_t, log_k;
  for (double t : {0.002, 0.004, 0.008, 0.016, 0.032, 0.064}) {
    log_t.push_back(std::log(t));
    log_k.push_back(std::log(std::abs(heat_kernel(circle, t, 0, 0))));
  }
  const double slope = testing::fit_slope(log_t, log_k);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.05));
}

TEST_CASE("hemisphere/disc pair: orthonormal systems on the shared grid") {
  const HemisphereDiscPair pair = build_hemisphere_disc_pair(40, 24, 4, 4);
  CHECK(pair.hemisphere_residual < 1e-10);
  CHECK(pair.disc_residual < 1e-10);
  CHECK(pair.hemisphere.size() == 40 * 24);
  CHECK(pair.hemisphere.modes() == 5 * 9);
  // hemisphere measure is a probability measure, the disc carries plain area
  CHECK(pair.hemisphere.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.disc.total_mass() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK_THROWS_AS(build_hemisphere_disc_pair(10, 24, 4, 4), std::invalid_argument);
}

TEST_CASE("hemisphere eigenfunctions vanish on the equator") {
  // radial factor is an odd-degree symmetric-parameter polynomial at cos = 0
  for (int l : {0, 1, 2})
    for (int j : {0, 1, 3}) {
      const JacobiBasis basis(l, l, 2 * j + 1);
      CHECK(std::fabs(basis.eval(2 * j + 1, 0.0)) < 1e-14);
    }
}

TEST_CASE("synthesis coupling reproduces hemisphere modes on the grid") {
  const HemisphereDiscPair pair = build_hemisphere_disc_pair(40, 24, 4, 4);
  const Eigen::Index n = pair.hemisphere.size();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < pair.hemisphere.modes(); ++c) {
    Eigen::VectorXcd synthesized = Eigen::VectorXcd::Zero(n);
    for (const auto& e : pair.synthesis_connection.entries)
      if (e.j == static_cast<int>(c))
        synthesized += e.value * pair.disc.eigenfunctions.col(e.k);
    worst = std::max(
        worst,
        (synthesized - pair.hemisphere.eigenfunctions.col(c)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("landmark coupling of the pair is the finite lift matrix") {
  const HemisphereDiscPair pair = build_hemisphere_disc_pair(40, 24, 4, 4);
  for (const auto& e : pair.connection.entries) {
    const auto [j, l] = pair.hemisphere_modes[static_cast<size_t>(e.j)];
    const auto [k, m] = pair.disc_modes[static_cast<size_t>(e.k)];
    CHECK(l == m);
    CHECK(j <= k);
  }
}

TEST_CASE("smooth filtering tames the jump overshoot the cutoff shows") {
  const int n_points = 1024, max_freq = 200;
  const SpectralSystem circle = build_circle_system(n_points, max_freq);
  FunctionSamples saw(circle.size());
  for (Eigen::Index i = 0; i < circle.size(); ++i) {
    const double theta = circle.points(i, 0);
    const double centered = theta > kPi ? theta - 2.0 * kPi : theta;
    saw(i) = 0.5 * centered;
  }
  const double jump = kPi;       // sawtooth jump height at theta = pi
  const double top = kPi / 2.0;  // max of the target

  const DirectedPair self = identity_pair(circle);
  auto overshoot = [&](const LowPassFilter& h, double scale) {
    // dense evaluation through the coefficients so the peak is resolved
    const Eigen::VectorXcd coeff = coefficients(circle, saw);
    double peak = 0.0;
    for (int i = 0; i < 16384; ++i) {
      const double theta = 2.0 * kPi * i / 16384;
      std::complex<double> acc =
          coeff(0) * (1.0 / std::sqrt(2.0 * kPi)) * h(0.0);
      for (int k = 1; k <= max_freq; ++k) {
        const double hk = h(k / scale);
        if (hk == 0.0) continue;
        acc += hk / std::sqrt(kPi) *
               (coeff(2 * k - 1) * std::cos(k * theta) +
                coeff(2 * k) * std::sin(k * theta));
      }
      peak = std::max(peak, acc.real());
    }
    return (peak - top) / jump;
  };

  const double cutoff_overshoot = overshoot(make_cutoff_filter(), 128.0);
  const double smooth_overshoot = overshoot(make_filter(4), 128.0);
  CHECK(cutoff_overshoot > 0.08);
  CHECK(smooth_overshoot < cutoff_overshoot);

  // smooth-filter sup error stays bounded across scales
  double worst = 0.0;
  for (double n : {16.0, 32.0, 64.0, 128.0}) {
    const FunctionSamples approx = sigma(self, make_filter(4), n, saw);
    worst = std::max(worst, (approx - saw).cwiseAbs().maxCoeff());
  }
  CHECK(worst < top + 0.1 * jump + 0.05);
}
