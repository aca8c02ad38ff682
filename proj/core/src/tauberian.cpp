#include "speclift/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "line_fit.hpp"

namespace speclift {

DiscreteMeasure make_measure(std::vector<double> locations,
                             std::vector<std::complex<double>> masses) {
  if (locations.size() != masses.size())
    throw std::invalid_argument("make_measure: length mismatch");
  for (size_t m = 0; m < locations.size(); ++m) {
    if (!(locations[m] >= 0.0))
      throw std::invalid_argument("make_measure: locations must be >= 0");
    if (m > 0 && locations[m] <= locations[m - 1])
      throw std::invalid_argument("make_measure: locations must be increasing");
  }
  return DiscreteMeasure{std::move(locations), std::move(masses)};
}

DiscreteMeasure measure_from_pair(const SpectralSystem& s1,
                                  const SpectralSystem& s2,
                                  const ConnectionMatrix& a, Eigen::Index i1,
                                  Eigen::Index i2) {
  if (i1 < 0 || i1 >= s1.size() || i2 < 0 || i2 >= s2.size())
    throw std::invalid_argument("measure_from_pair: point index out of range");
  std::vector<std::pair<double, std::complex<double>>> atoms;
  atoms.reserve(a.entries.size());
  for (const auto& e : a.entries)
    atoms.push_back({e.ell, e.value * s1.eigenfunctions(i1, e.j) *
                                std::conj(s2.eigenfunctions(i2, e.k))});
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  DiscreteMeasure mu;
  for (const auto& [loc, mass] : atoms) {
    if (!mu.locations.empty() &&
        loc - mu.locations.back() <= 1e-12 * (1.0 + loc)) {
      mu.masses.back() += mass;  // merge equal joint eigenvalues
    } else {
      mu.locations.push_back(loc);
      mu.masses.push_back(mass);
    }
  }
  return mu;
}

DiscreteMeasure measure_from_pair(const DirectedPair& pair, Eigen::Index i1,
                                  Eigen::Index i2) {
  ConnectionMatrix ident = identity_connection(pair.base);
  return measure_from_pair(pair.base, pair.dual, ident, i1, i2);
}

double christoffel_sup(const DiscreteMeasure& mu, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("christoffel_sup: Q must be > 0");
  double cum = 0.0, sup = 0.0;
  for (size_t m = 0; m < mu.size(); ++m) {
    cum += std::abs(mu.masses[m]);
    sup = std::max(sup, cum / std::pow(mu.locations[m] + 2.0, q));
  }
  return sup;
}

std::complex<double> heat_transform(const DiscreteMeasure& mu, double t) {
  if (t <= 0.0) throw std::invalid_argument("heat_transform: t must be > 0");
  std::complex<double> acc = 0.0;
  for (size_t m = 0; m < mu.size(); ++m)
    acc += mu.masses[m] * std::exp(-mu.locations[m] * mu.locations[m] * t);
  return acc;
}

std::complex<double> filter_transform(const DiscreteMeasure& mu,
                                      const LowPassFilter& h, double n) {
  if (n <= 0.0) throw std::invalid_argument("filter_transform: n must be > 0");
  std::complex<double> acc = 0.0;
  for (size_t m = 0; m < mu.size(); ++m) {
    if (mu.locations[m] >= n) break;  // filter support ends at u = n
    acc += mu.masses[m] * h(mu.locations[m] / n);
  }
  return acc;
}

std::complex<double> bochner_riesz(const DiscreteMeasure& mu, int s, double n) {
  if (s < 0) throw std::invalid_argument("bochner_riesz: S must be >= 0");
  if (n <= 0.0) throw std::invalid_argument("bochner_riesz: n must be > 0");
  std::complex<double> acc = 0.0;
  for (size_t m = 0; m < mu.size(); ++m) {
    const double ratio = mu.locations[m] / n;
    const double base = 1.0 - ratio * ratio;
    if (base <= 0.0) continue;
    acc += mu.masses[m] * std::pow(base, s);
  }
  return acc;
}

LocalizationReport verify_localization(const DiscreteMeasure& mu,
                                       const LowPassFilter& h, double q, int s,
                                       double r,
                                       const std::vector<double>& n_grid) {
  if (r <= 0.0)
    throw std::invalid_argument("verify_localization: r must be > 0");
  if (n_grid.empty())
    throw std::invalid_argument("verify_localization: empty n grid");

  LocalizationReport report;
  if (!h.is_smooth()) {
    report.status = "non-smooth filter";  // the bound assumes a smooth filter
    return report;
  }
  const double christoffel = christoffel_sup(mu, q);
  if (christoffel <= 0.0) {
    report.status = "degenerate";
    return report;
  }

  std::vector<double> far_n, far_mag, near_n, near_mag;
  for (double n : n_grid) {
    if (n < 1.0) continue;
    const double mag = std::abs(filter_transform(mu, h, n));
    const double envelope = std::max(1.0, std::pow(n * r, s));
    report.empirical_c = std::max(
        report.empirical_c, mag * envelope / (std::pow(n, q) * christoffel));
    if (mag <= 1e-13) continue;
    if (n * r > 1.0) {
      far_n.push_back(std::log(n));
      far_mag.push_back(std::log(mag));
    } else {
      near_n.push_back(std::log(n));
      near_mag.push_back(std::log(mag));
    }
  }
  if (far_n.size() >= 2) {
    report.slope_hat = detail::fit_line(far_n, far_mag).slope;
    report.points_used = static_cast<int>(far_n.size());
    report.status = "ok";
  } else if (near_n.size() >= 2) {
    // whole grid sits inside nr <= 1; report the growth slope instead
    report.slope_hat = detail::fit_line(near_n, near_mag).slope;
    report.points_used = static_cast<int>(near_n.size());
    report.status = "near-regime";
  } else {
    report.status = "degenerate";
  }
  report.bound_holds_with_c = report.empirical_c > 0.0;
  return report;
}

}  // namespace speclift
