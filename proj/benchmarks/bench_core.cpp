#include <benchmark/benchmark.h>

#include <random>
#include <speclift/approximation.hpp>
#include <speclift/coupling.hpp>
#include <speclift/directed_pair.hpp>
#include <speclift/filters.hpp>
#include <speclift/jacobi.hpp>
#include <speclift/tauberian.hpp>

using namespace speclift;

namespace {

Eigen::MatrixXcd random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd w(n, n);
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = gauss(rng);
  return w;
}

FunctionSamples random_samples(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  FunctionSamples f(n);
  for (Eigen::Index i = 0; i < n; ++i) f(i) = {gauss(rng), gauss(rng)};
  return f;
}

void filter_eval(benchmark::State& state) {
  const auto h = make_filter(static_cast<int>(state.range(0)));
  double u = 0.0;
  for (auto _ : state) {
    u += 1e-7;
    if (u > 1.2) u = 0.0;
    benchmark::DoNotOptimize(h(u));
  }
}
BENCHMARK(filter_eval)->Arg(4)->Arg(8)->Arg(16);

void directed_pair_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd w = random_matrix(n, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_directed_pair(w, n));
  }
}
BENCHMARK(directed_pair_build)->Arg(32)->Arg(64)->Arg(128)
    ->Unit(benchmark::kMillisecond);

void sigma_apply(benchmark::State& state) {
  const SpectralSystem circle =
      build_circle_system(static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(0)) / 4);
  const DirectedPair self = identity_pair(circle);
  const auto h = make_filter(4);
  const FunctionSamples f = random_samples(circle.size(), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma(self, h, 16.0, f));
  }
}
BENCHMARK(sigma_apply)->Arg(256)->Arg(512)->Arg(1024)
    ->Unit(benchmark::kMicrosecond);

void pyramid_depth8(benchmark::State& state) {
  const SpectralSystem circle = build_circle_system(512, 128);
  const DirectedPair self = identity_pair(circle);
  const auto h = make_filter(4);
  const FunctionSamples f = random_samples(circle.size(), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_pyramid(self, h, 8, f));
  }
}
BENCHMARK(pyramid_depth8)->Unit(benchmark::kMillisecond);

void jacobi_recurrence(benchmark::State& state) {
  const JacobiBasis basis(1.0, 0.5, static_cast<int>(state.range(0)));
  double x = -1.0;
  for (auto _ : state) {
    x += 1e-5;
    if (x > 1.0) x = -1.0;
    benchmark::DoNotOptimize(basis.eval(static_cast<int>(state.range(0)), x));
  }
}
BENCHMARK(jacobi_recurrence)->Arg(20)->Arg(100);

void landmark_connection_build(benchmark::State& state) {
  const HemisphereDiscPair pair = build_hemisphere_disc_pair(40, 24, 4, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(landmark_connection(
        pair.hemisphere, pair.disc, pair.landmarks, JointEigenvaluePolicy::Row));
  }
}
BENCHMARK(landmark_connection_build)->Unit(benchmark::kMillisecond);

void localization_sweep(benchmark::State& state) {
  const SpectralSystem circle = build_circle_system(512, 128);
  const ConnectionMatrix ident = identity_connection(circle);
  const DiscreteMeasure mu = measure_from_pair(circle, circle, ident, 0, 41);
  const double r = circle.distance(0, 41);
  std::vector<double> n_grid;
  for (int i = 0; i <= 24; ++i)
    n_grid.push_back(4.0 / r * std::pow(16.0, i / 24.0));
  const auto h = make_filter(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_localization(mu, h, 1.0, 4, r, n_grid));
  }
}
BENCHMARK(localization_sweep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
