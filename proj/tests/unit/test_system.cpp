#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <speclift/jacobi.hpp>
#include <speclift/spectral_system.hpp>

#include "support/oracles.hpp"

using namespace speclift;
namespace {
constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd circle_points(int n) {
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * i / n;
    pts.row(i) << std::cos(theta), std::sin(theta);
  }
  return pts;
}
}  // namespace

TEST_CASE("two identical points: hand-solved 2x2 Laplacian") {
  Eigen::MatrixXd pts(2, 2);
  pts << 0.3, -0.1, 0.3, -0.1;
  const SpectralSystem system = build_undirected_system(pts, 0.7, 2);
  // W is all ones, L = [[1,-1],[-1,1]], spectrum {0, 2}
  CHECK(system.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(system.eigenvalues(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("graph Laplacian always has the flat zero mode") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd pts(20, 3);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = gauss(rng);
  const SpectralSystem system = build_undirected_system(pts, 2.0, 6);
  CHECK(system.eigenvalues(0) < 1e-6);
  const auto flat = system.eigenfunctions.col(0);
  CHECK((flat.array() - flat(0)).abs().maxCoeff() < 1e-8);
  CHECK(orthonormality_residual(system) < 1e-8);
}

TEST_CASE("fine circle grid shows the 1,2,2 multiplicity pattern") {
  const SpectralSystem system =
      build_undirected_system(circle_points(160), 0.05, 5);
  CHECK(system.eigenvalues(0) < 1e-7);
  CHECK(system.eigenvalues(1) > 1e-4);  // gap above the flat mode
  CHECK(system.eigenvalues(1) ==
        doctest::Approx(system.eigenvalues(2)).epsilon(1e-6));
  CHECK(system.eigenvalues(3) ==
        doctest::Approx(system.eigenvalues(4)).epsilon(1e-6));
  CHECK(system.eigenvalues(3) > system.eigenvalues(2) * 1.5);
}

TEST_CASE("input guards of the undirected builder") {
  Eigen::MatrixXd pts = circle_points(8);
  CHECK_THROWS_AS(build_undirected_system(pts, -1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_undirected_system(pts, 1.0, 9), std::invalid_argument);
  pts(0, 0) = std::nan("");
  CHECK_THROWS_AS(build_undirected_system(pts, 1.0, 4), std::invalid_argument);
}

TEST_CASE("coefficients recover unit coordinates on orthonormal systems") {
  const SpectralSystem circle = build_circle_system(64, 10);
  const Eigen::Index k0 = 5;
  Eigen::VectorXcd e = coefficients(circle, circle.eigenfunctions.col(k0));
  for (Eigen::Index k = 0; k < e.size(); ++k)
    CHECK(std::abs(e(k) - (k == k0 ? 1.0 : 0.0)) < 1e-8);

  CHECK(coefficients(circle, FunctionSamples::Zero(circle.size())).norm() == 0.0);

  const FunctionSamples combo =
      circle.eigenfunctions.col(1) + 2.0 * circle.eigenfunctions.col(3);
  const Eigen::VectorXcd c = coefficients(circle, combo);
  CHECK(std::abs(c(1) - 1.0) < 1e-10);
  CHECK(std::abs(c(3) - 2.0) < 1e-10);
  CHECK(std::abs(c(0)) < 1e-10);
  CHECK(std::abs(c(2)) < 1e-10);

  CHECK_THROWS_AS(coefficients(circle, FunctionSamples::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("analysis then synthesis is the identity on coefficients") {
  const SpectralSystem circle = build_circle_system(128, 20);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd a(circle.modes());
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = {gauss(rng), gauss(rng)};
  const Eigen::VectorXcd round_trip = coefficients(circle, synthesize(circle, a));
  CHECK((round_trip - a).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("heat kernel limits and symmetry") {
  const SpectralSystem circle = build_circle_system(64, 8);
  // large t leaves only the flat mode, |phi_0|^2 = 1/(2 pi)
  CHECK(std::abs(heat_kernel(circle, 50.0, 3, 7) -
                 std::complex<double>(1.0 / (2.0 * kPi), 0.0)) < 1e-12);

  SpectralSystem single;
  single.points = Eigen::MatrixXd::Zero(1, 1);
  single.weights = Eigen::VectorXd::Ones(1);
  single.eigenvalues = Eigen::VectorXd::Zero(1);
  single.eigenfunctions = Eigen::MatrixXcd::Ones(1, 1);
  CHECK(std::abs(heat_kernel(single, 0.37, 0, 0) - 1.0) < 1e-15);

  for (auto [i, j] : {std::pair<int, int>{0, 5}, {2, 9}, {4, 4}})
    CHECK(std::abs(heat_kernel(circle, 0.2, i, j) -
                   std::conj(heat_kernel(circle, 0.2, j, i))) < 1e-14);
  CHECK_THROWS_AS(heat_kernel(circle, 0.0, 0, 0), std::invalid_argument);
}

TEST_CASE("heat semigroup composes under the discrete measure") {
  const SpectralSystem circle = build_circle_system(96, 12);
  const double t = 0.05;
  for (auto [x, y] : {std::pair<int, int>{0, 10}, {3, 40}}) {
    std::complex<double> composed = 0.0;
    for (Eigen::Index m = 0; m < circle.size(); ++m)
      composed += circle.weights(m) * heat_kernel(circle, t, x, m) *
                  heat_kernel(circle, t, m, y);
    CHECK(std::abs(composed - heat_kernel(circle, 2.0 * t, x, y)) < 1e-8);
  }
}

TEST_CASE("ball measure counts quadrature mass inside the radius") {
  const SpectralSystem circle = build_circle_system(128, 10);
  CHECK(ball_measure(circle, 5, 0.0) ==
        doctest::Approx(circle.weights(5)).epsilon(1e-14));
  CHECK(ball_measure(circle, 5, 10.0) ==
        doctest::Approx(circle.total_mass()).epsilon(1e-14));
  // quarter-circumference ball holds about half the mass
  CHECK(ball_measure(circle, 0, kPi / 2.0) ==
        doctest::Approx(0.5 * circle.total_mass()).epsilon(0.02));
}

TEST_CASE("discrete Lp norms") {
  SpectralSystem sys;
  sys.points = Eigen::MatrixXd::Zero(2, 1);
  sys.weights = Eigen::VectorXd::Constant(2, 0.5);
  sys.eigenvalues = Eigen::VectorXd::Zero(1);
  sys.eigenfunctions = Eigen::MatrixXcd::Ones(2, 1);
  FunctionSamples ones = FunctionSamples::Ones(2);
  for (double p : {1.0, 2.0, 7.0})
    CHECK(lp_norm(sys, ones, p) == doctest::Approx(1.0).epsilon(1e-14));
  FunctionSamples f(2);
  f << 3.0, -4.0;
  CHECK(lp_norm(sys, f, std::numeric_limits<double>::infinity()) == 4.0);
  CHECK_THROWS_AS(lp_norm(sys, f, 0.5), std::invalid_argument);

  const SpectralSystem circle = build_circle_system(64, 8);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  FunctionSamples g(circle.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = {gauss(rng), gauss(rng)};
  // Parseval: the L2 norm equals the coefficient energy once g is projected
  const Eigen::VectorXcd coeff = coefficients(circle, g);
  const FunctionSamples proj = synthesize(circle, coeff);
  CHECK(lp_norm(circle, proj, 2.0) ==
        doctest::Approx(coeff.norm()).epsilon(1e-10));
}

TEST_CASE("gaussian-bound diagnostic recovers the circle exponent") {
  const SpectralSystem circle = build_circle_system(256, 100);
  std::vector<double> t_grid;
  for (double t = 0.002; t <= 0.1; t *= 1.6) t_grid.push_back(t);
  const GaussianBoundFit fit = estimate_gaussian_bound(circle, t_grid);
  CHECK(std::fabs(fit.q_hat - 1.0) < 0.3);
  CHECK(fit.c2_hat > 0.0);
  // the fitted constants are a least-squares diagnostic, so some excess over
  // the fitted bound is expected; it just has to stay a sane ratio
  CHECK(fit.max_violation >= 0.0);
  CHECK(fit.max_violation < 50.0);
}

TEST_CASE("gaussian-bound diagnostic on degenerate systems") {
  SpectralSystem single;
  single.points = Eigen::MatrixXd::Zero(1, 1);
  single.weights = Eigen::VectorXd::Ones(1);
  single.eigenvalues = Eigen::VectorXd::Zero(1);
  single.eigenfunctions = Eigen::MatrixXcd::Ones(1, 1);
  const GaussianBoundFit fit = estimate_gaussian_bound(single, {0.1, 0.2, 0.4});
  CHECK(fit.q_hat == 0.0);

  SpectralSystem coincident = single;
  coincident.points = Eigen::MatrixXd::Zero(2, 1);
  coincident.weights = Eigen::VectorXd::Constant(2, 0.5);
  coincident.eigenfunctions = Eigen::MatrixXcd::Ones(2, 1);
  CHECK_THROWS_AS(estimate_gaussian_bound(coincident, {0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("gaussian-bound diagnostic near the surface exponent of the hemisphere") {
  const HemisphereDiscPair pair = build_hemisphere_disc_pair(36, 20, 4, 4);
  // scaling window: above the truncation floor, below the flat-mode ceiling
  std::vector<double> t_grid;
  for (double t = 0.02; t <= 0.12; t *= 1.3) t_grid.push_back(t);
  const GaussianBoundFit fit = estimate_gaussian_bound(pair.hemisphere, t_grid);
  CHECK(std::fabs(fit.q_hat - 2.0) < 0.5);
}

TEST_CASE("validate flags broken invariants") {
  SpectralSystem sys = build_circle_system(32, 4);
  validate(sys);
  SpectralSystem bad = sys;
  bad.weights(0) = -1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = sys;
  bad.eigenvalues(0) = 5.0;  // breaks the ordering
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = sys;
  bad.eigenfunctions.col(0) *= 3.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
