#include "speclift/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "line_fit.hpp"

namespace speclift {

namespace {

constexpr double kSparseDrop = 1e-14;

double joint_eigenvalue(JointEigenvaluePolicy policy, double lam1, double lam2) {
  switch (policy) {
    case JointEigenvaluePolicy::MaxPair: return std::max(lam1, lam2);
    case JointEigenvaluePolicy::RootSumSquares:
      return std::sqrt(lam1 * lam1 + lam2 * lam2);
    case JointEigenvaluePolicy::Row: return lam1;
  }
  return std::max(lam1, lam2);
}

}  // namespace

void validate(const LandmarkSet& landmarks, Eigen::Index n1, Eigen::Index n2) {
  const size_t m = landmarks.size();
  if (m == 0) throw std::invalid_argument("landmarks: empty set");
  if (landmarks.indices_in_2.size() != m ||
      static_cast<size_t>(landmarks.nu_weights.size()) != m)
    throw std::invalid_argument("landmarks: field lengths differ");
  for (size_t r = 0; r < m; ++r) {
    if (landmarks.indices_in_1[r] < 0 || landmarks.indices_in_1[r] >= n1 ||
        landmarks.indices_in_2[r] < 0 || landmarks.indices_in_2[r] >= n2)
      throw std::invalid_argument("landmarks: point index out of range");
  }
  if ((landmarks.nu_weights.array() <= 0.0).any())
    throw std::invalid_argument("landmarks: weights must be positive");
  if (std::fabs(landmarks.nu_weights.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("landmarks: weights must sum to 1");
}

LandmarkSet full_landmarks(const SpectralSystem& s1, const SpectralSystem& s2) {
  if (s1.size() != s2.size())
    throw std::invalid_argument("full_landmarks: systems differ in size");
  LandmarkSet out;
  const Eigen::Index n = s1.size();
  out.indices_in_1.resize(static_cast<size_t>(n));
  out.indices_in_2.resize(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.indices_in_1[static_cast<size_t>(i)] = i;
    out.indices_in_2[static_cast<size_t>(i)] = i;
  }
  out.nu_weights = s1.weights / s1.weights.sum();
  return out;
}

ConnectionMatrix identity_connection(const SpectralSystem& system) {
  ConnectionMatrix out;
  out.rows = out.cols = static_cast<int>(system.modes());
  out.entries.reserve(static_cast<size_t>(out.rows));
  for (int k = 0; k < out.rows; ++k)
    out.entries.push_back({k, k, {1.0, 0.0}, system.eigenvalues(k)});
  return out;
}

ConnectionMatrix landmark_connection(const SpectralSystem& s1,
                                     const SpectralSystem& s2,
                                     const LandmarkSet& landmarks,
                                     JointEigenvaluePolicy policy) {
  validate(landmarks, s1.size(), s2.size());
  const size_t m = landmarks.size();
  Eigen::MatrixXcd phi1(m, s1.modes()), phi2(m, s2.modes());
  for (size_t r = 0; r < m; ++r) {
    phi1.row(r) = s1.eigenfunctions.row(landmarks.indices_in_1[r]);
    phi2.row(r) = s2.eigenfunctions.row(landmarks.indices_in_2[r]);
  }
  const Eigen::MatrixXcd gamma =
      phi1.adjoint() * (landmarks.nu_weights.asDiagonal() * phi2);

  ConnectionMatrix out;
  out.rows = static_cast<int>(s1.modes());
  out.cols = static_cast<int>(s2.modes());
  for (int j = 0; j < out.rows; ++j)
    for (int k = 0; k < out.cols; ++k)
      if (std::abs(gamma(j, k)) >= kSparseDrop)
        out.entries.push_back(
            {j, k, gamma(j, k),
             joint_eigenvalue(policy, s1.eigenvalues(j), s2.eigenvalues(k))});
  return out;
}

FunctionSamples tensor_sigma(const SpectralSystem& s1, const SpectralSystem& s2,
                             const ConnectionMatrix& gamma, const LowPassFilter& h,
                             double n, const FunctionSamples& f) {
  if (n <= 0.0) throw std::invalid_argument("tensor_sigma: scale n must be > 0");
  if (gamma.rows != s1.modes() || gamma.cols != s2.modes())
    throw std::invalid_argument("tensor_sigma: connection shape mismatch");
  const Eigen::VectorXcd fhat = coefficients(s2, f);
  Eigen::VectorXcd coeff1 = Eigen::VectorXcd::Zero(s1.modes());
  for (const auto& e : gamma.entries)
    coeff1(e.j) += h(s1.eigenvalues(e.j) / n) * h(s2.eigenvalues(e.k) / n) *
                   e.value * fhat(e.k);
  return synthesize(s1, coeff1);
}

FunctionSamples joint_sigma(const SpectralSystem& s1, const SpectralSystem& s2,
                            const ConnectionMatrix& a, const LowPassFilter& h,
                            double n, const FunctionSamples& f) {
  if (n <= 0.0) throw std::invalid_argument("joint_sigma: scale n must be > 0");
  if (a.rows != s1.modes() || a.cols != s2.modes())
    throw std::invalid_argument("joint_sigma: connection shape mismatch");
  const Eigen::VectorXcd fhat = coefficients(s2, f);
  Eigen::VectorXcd coeff1 = Eigen::VectorXcd::Zero(s1.modes());
  for (const auto& e : a.entries)
    coeff1(e.j) += h(e.ell / n) * e.value * fhat(e.k);
  return synthesize(s1, coeff1);
}

double band_limit_factor(const SpectralSystem& s1, const ConnectionMatrix& a) {
  double alpha = 0.0;
  for (const auto& e : a.entries) {
    const double lam1 = s1.eigenvalues(e.j);
    if (lam1 <= 0.0) continue;
    if (e.ell <= 0.0) return std::numeric_limits<double>::infinity();
    alpha = std::max(alpha, lam1 / e.ell);
  }
  return alpha;
}

namespace {

LiftResult run_lift(const SpectralSystem& s1, const SpectralSystem& s2,
                    const LowPassFilter& h, const FunctionSamples& f,
                    const LiftOptions& options,
                    const std::function<FunctionSamples(double)>& sigma_at) {
  if (options.max_level < 1)
    throw std::invalid_argument("lift: max_level must be >= 1");
  LiftResult out;
  FunctionSamples prev = sigma_at(1.0);
  for (int m = 1; m <= options.max_level; ++m) {
    FunctionSamples cur = sigma_at(std::pow(2.0, m));
    out.level_increments.entries.push_back(lp_norm(s1, cur - prev, options.p));
    prev = std::move(cur);
  }
  out.lift = prev;
  out.converged = out.level_increments.entries.back() < options.tol;

  std::vector<double> xs, ys;
  for (size_t m = 0; m < out.level_increments.entries.size(); ++m)
    if (out.level_increments.entries[m] > 1e-13) {
      xs.push_back(static_cast<double>(m));
      ys.push_back(std::log2(out.level_increments.entries[m]));
    }
  if (xs.size() >= 2) out.beta_hat = -detail::fit_line(xs, ys).slope;

  // running check of the summability hypothesis behind the limit operator
  double acc = 0.0;
  for (int m = 0; m <= options.max_level; ++m) {
    const double scale = std::pow(2.0, m);
    double e_m;
    if (options.p == 2.0 && s2.orthonormal) {
      e_m = degree_of_approx_l2(s2, f, scale);
    } else {
      e_m = degree_of_approx_lp(s2, f, scale, options.p, h).value;
    }
    acc += std::pow(2.0, options.sufficient_exponent * m) * e_m;
    out.sufficient_partial_sums.push_back(acc);
  }
  return out;
}

}  // namespace

LiftResult tensor_lift(const SpectralSystem& s1, const SpectralSystem& s2,
                       const ConnectionMatrix& gamma, const LowPassFilter& h,
                       const FunctionSamples& f, const LiftOptions& options) {
  return run_lift(s1, s2, h, f, options, [&](double n) {
    return tensor_sigma(s1, s2, gamma, h, n, f);
  });
}

LiftResult joint_lift(const SpectralSystem& s1, const SpectralSystem& s2,
                      const ConnectionMatrix& a, const LowPassFilter& h,
                      const FunctionSamples& f, const LiftOptions& options) {
  return run_lift(s1, s2, h, f, options, [&](double n) {
    return joint_sigma(s1, s2, a, h, n, f);
  });
}

double joint_distance(const SpectralSystem& s1, const SpectralSystem& s2,
                      const LandmarkSet& landmarks, Eigen::Index i1,
                      Eigen::Index i2) {
  validate(landmarks, s1.size(), s2.size());
  double best = std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < landmarks.size(); ++r)
    best = std::min(best, s1.distance(i1, landmarks.indices_in_1[r]) +
                              s2.distance(landmarks.indices_in_2[r], i2));
  return best;
}

double JointDistance::operator()(const SpectralSystem& s1,
                                 const SpectralSystem& s2, Eigen::Index i1,
                                 Eigen::Index i2) const {
  switch (kind) {
    case Kind::LandmarkInfimum:
      return joint_distance(s1, s2, landmarks, i1, i2);
    case Kind::Table:
      return table(i1, i2);
    case Kind::SharedGridSystem1:
      return s1.distance(i1, i2);
  }
  return 0.0;
}

double diffusion_distance(const SpectralSystem& s1, const SpectralSystem& s2,
                          const ConnectionMatrix& gamma, double t,
                          Eigen::Index i1, Eigen::Index i2) {
  if (t <= 0.0) throw std::invalid_argument("diffusion_distance: t must be > 0");
  // interaction term uses the pair frequencies, not the joint eigenvalues
  std::complex<double> cross = 0.0;
  for (const auto& e : gamma.entries) {
    const double l1 = s1.eigenvalues(e.j);
    const double l2 = s2.eigenvalues(e.k);
    cross += std::exp(-t * (l1 * l1 + l2 * l2)) * e.value *
             s1.eigenfunctions(i1, e.j) * std::conj(s2.eigenfunctions(i2, e.k));
  }
  const double radicand = std::real(heat_kernel(s1, 2.0 * t, i1, i1)) +
                          std::real(heat_kernel(s2, 2.0 * t, i2, i2)) -
                          2.0 * std::real(cross);
  if (radicand < -1e-10)
    throw std::runtime_error(
        "diffusion_distance: inconsistent inputs, radicand = " +
        std::to_string(radicand));
  return std::sqrt(std::max(radicand, 0.0));
}

std::complex<double> joint_heat_kernel(const SpectralSystem& s1,
                                       const SpectralSystem& s2,
                                       const ConnectionMatrix& a, double t,
                                       Eigen::Index i1, Eigen::Index i2) {
  if (t <= 0.0) throw std::invalid_argument("joint_heat_kernel: t must be > 0");
  std::complex<double> acc = 0.0;
  for (const auto& e : a.entries)
    acc += std::exp(-e.ell * e.ell * t) * e.value * s1.eigenfunctions(i1, e.j) *
           std::conj(s2.eigenfunctions(i2, e.k));
  return acc;
}

JointGaussianDiagnostics verify_joint_gaussian(
    const SpectralSystem& s1, const SpectralSystem& s2, const ConnectionMatrix& a,
    const JointDistance& d12, const std::vector<double>& t_grid,
    const std::vector<double>& n_grid) {
  if (t_grid.empty() || n_grid.empty())
    throw std::invalid_argument("verify_joint_gaussian: empty grid");
  JointGaussianDiagnostics out;

  const Eigen::Index stride1 = std::max<Eigen::Index>(1, s1.size() / 12);
  const Eigen::Index stride2 = std::max<Eigen::Index>(1, s2.size() / 12);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index i = 0; i < s1.size(); i += stride1)
    for (Eigen::Index j = 0; j < s2.size(); j += stride2) pairs.push_back({i, j});

  double ell_max = 0.0;
  for (const auto& e : a.entries) ell_max = std::max(ell_max, e.ell);

  // growth of the filtered absolute partial sums in n
  std::vector<double> log_n, log_s;
  for (double n : n_grid) {
    if (n > ell_max && ell_max > 0.0) continue;  // saturated, no growth left
    double sup = 0.0;
    for (const auto& [i, j] : pairs) {
      double s = 0.0;
      for (const auto& e : a.entries)
        if (e.ell < n)
          s += std::abs(e.value * s1.eigenfunctions(i, e.j) *
                        std::conj(s2.eigenfunctions(j, e.k)));
      sup = std::max(sup, s);
    }
    if (sup > 0.0 && n > 0.0) {
      log_n.push_back(std::log(n));
      log_s.push_back(std::log(sup));
    }
  }
  detail::LineFit on_diag;
  if (log_n.size() >= 2) {
    on_diag = detail::fit_line(log_n, log_s);
    out.q_hat = on_diag.slope;
    for (size_t i = 0; i < log_n.size(); ++i)
      out.max_on_diag_violation =
          std::max(out.max_on_diag_violation,
                   std::exp(log_s[i] - (on_diag.intercept +
                                        on_diag.slope * log_n[i])) -
                       1.0);
  }

  // t-prefactor of sup |K_t| and the cross-distance decay rate
  std::vector<double> log_t, log_k;
  for (double t : t_grid) {
    double sup = 0.0;
    for (const auto& [i, j] : pairs)
      sup = std::max(sup, std::abs(joint_heat_kernel(s1, s2, a, t, i, j)));
    if (sup > 0.0) {
      log_t.push_back(std::log(t));
      log_k.push_back(std::log(sup));
    }
  }
  detail::LineFit pre;
  if (log_t.size() >= 2) {
    pre = detail::fit_line(log_t, log_k);
    out.t_exponent_hat = -pre.slope;
  }
  std::vector<double> xs, ys;
  for (double t : t_grid) {
    for (const auto& [i, j] : pairs) {
      const double mag = std::abs(joint_heat_kernel(s1, s2, a, t, i, j));
      const double d = d12(s1, s2, i, j);
      if (mag < 1e-300 || d <= 0.0) continue;
      xs.push_back(d * d / t);
      ys.push_back(std::log(mag) - (pre.intercept + pre.slope * std::log(t)));
    }
  }
  if (xs.size() >= 2) {
    const auto decay = detail::fit_line(xs, ys);
    out.c2_hat = std::max(0.0, -decay.slope);
    for (size_t i = 0; i < xs.size(); ++i)
      out.max_off_diag_violation =
          std::max(out.max_off_diag_violation,
                   std::exp(ys[i] - (decay.intercept + decay.slope * xs[i])) - 1.0);
  }
  return out;
}

}  // namespace speclift
