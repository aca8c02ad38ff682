#include "speclift/approximation.hpp"

#include <cmath>

namespace speclift {

double degree_of_approx_l2(const SpectralSystem& system, const FunctionSamples& f,
                           double n) {
  const Eigen::VectorXcd coeff = coefficients(system, f);
  double tail = 0.0;
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    if (system.eigenvalues(k) >= n) tail += std::norm(coeff(k));
  return std::sqrt(tail);
}

LpApproxResult degree_of_approx_lp(const SpectralSystem& system,
                                   const FunctionSamples& f, double n, double p,
                                   const LowPassFilter& h) {
  const DirectedPair self = identity_pair(system);
  LpApproxResult out;
  out.value = lp_norm(system, f - sigma(self, h, n, f), p);
  out.near_best = true;
  return out;
}

double besov_seq_norm(const DecaySequence& seq, double rho, double gamma) {
  if (!(rho > 0.0)) throw std::invalid_argument("besov_seq_norm: rho must be > 0");
  if (!(gamma > 0.0))
    throw std::invalid_argument("besov_seq_norm: gamma must be > 0");
  if (std::isinf(rho)) {
    double sup = 0.0;
    for (size_t j = 0; j < seq.entries.size(); ++j)
      sup = std::max(sup, std::pow(2.0, gamma * static_cast<double>(j)) *
                              std::fabs(seq.entries[j]));
    return sup;
  }
  double acc = 0.0;
  for (size_t j = 0; j < seq.entries.size(); ++j)
    acc += std::pow(2.0, gamma * rho * static_cast<double>(j)) *
           std::pow(std::fabs(seq.entries[j]), rho);
  return std::pow(acc, 1.0 / rho);
}

SmoothnessReport classify_smoothness(const DecaySequence& pyramid_norms,
                                     double p) {
  constexpr double kFloor = 1e-12;
  SmoothnessReport report;
  report.p = p;

  std::vector<double> xs, ys;
  for (size_t j = 0; j < pyramid_norms.entries.size(); ++j) {
    const double a = pyramid_norms.entries[j];
    if (a > kFloor) {
      xs.push_back(static_cast<double>(j));
      ys.push_back(std::log2(a));
      report.levels_used.push_back(static_cast<int>(j));
    }
  }
  // trailing dead levels mean the input was band-limited at the stored scales
  if (!pyramid_norms.entries.empty() &&
      pyramid_norms.entries.back() <= kFloor &&
      !report.levels_used.empty())
    report.band_limited = true;

  if (xs.size() < 3)
    throw InsufficientLevelsError(
        "classify_smoothness: fewer than 3 levels above the noise floor");

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  report.gamma_hat = -slope;
  double rss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (slope * xs[i] + intercept);
    rss += r * r;
  }
  report.fit_residual = std::sqrt(rss / n);
  return report;
}

}  // namespace speclift
