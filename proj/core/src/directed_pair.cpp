#include "speclift/directed_pair.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace speclift {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXcd> full_svd(const Eigen::MatrixXcd& w) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(
      w, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

PolarDecomposition polar_decompose(const Eigen::MatrixXcd& w) {
  if (w.rows() != w.cols())
    throw std::invalid_argument("polar_decompose: matrix must be square");
  if (!w.allFinite())
    throw std::invalid_argument("polar_decompose: non-finite entries");

  const auto svd = full_svd(w);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index n = w.rows();

  PolarDecomposition out;
  out.P = svd.matrixU() * sv.asDiagonal() * svd.matrixU().adjoint();
  // Full U/V factors already carry a deterministic orthonormal completion of
  // the null space, so rank-deficient inputs get a reproducible unitary.
  out.U = svd.matrixU() * svd.matrixV().adjoint();

  const double scale = sv.size() > 0 ? sv(0) : 0.0;
  const double rank_tol = scale * static_cast<double>(n) * 1e-14;
  out.rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rank_tol) ++out.rank;
  out.unique = (out.rank == n);

  const double wnorm = w.norm();
  out.residual = wnorm > 0.0 ? (out.P * out.U - w).norm() / wnorm : 0.0;
  return out;
}

DirectedPair build_directed_pair(const Eigen::MatrixXcd& w, int K,
                                 const Eigen::VectorXd& weights,
                                 const Eigen::MatrixXd& points,
                                 const Metric& metric) {
  const Eigen::Index n = w.rows();
  if (w.rows() != w.cols())
    throw std::invalid_argument("build_directed_pair: matrix must be square");
  if (!w.allFinite())
    throw std::invalid_argument("build_directed_pair: non-finite entries");
  if (K < 1 || K > n)
    throw std::invalid_argument("build_directed_pair: need 1 <= K <= N");
  if (weights.size() != n || (weights.array() <= 0.0).any())
    throw std::invalid_argument("build_directed_pair: bad weights");

  const Eigen::VectorXd dsqrt = weights.array().sqrt();
  const Eigen::VectorXd dinv = weights.array().rsqrt();
  const Eigen::MatrixXcd t =
      dsqrt.asDiagonal() * w * Eigen::MatrixXcd(dinv.asDiagonal());
  const auto svd = full_svd(t);

  // JacobiSVD sorts singular values descending; we store them ascending,
  // with ties keeping the solver's column order (deterministic per input)
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return svd.singularValues()(a) < svd.singularValues()(b);
                   });

  DirectedPair pair;
  SpectralSystem& base = pair.base;
  base.points = points;
  base.weights = weights;
  base.metric = metric;
  base.provenance = Provenance::SvdLeft;
  base.orthonormal = true;
  base.eigenvalues.resize(K);
  base.eigenfunctions.resize(n, K);

  SpectralSystem& dual = pair.dual;
  dual = base;
  dual.provenance = Provenance::SvdRight;

  for (int k = 0; k < K; ++k) {
    const Eigen::Index src = order[static_cast<size_t>(k)];
    base.eigenvalues(k) = svd.singularValues()(src);
    dual.eigenvalues(k) = svd.singularValues()(src);
    Eigen::VectorXcd u = svd.matrixU().col(src);
    Eigen::VectorXcd v = svd.matrixV().col(src);
    // rotate the pair by a common phase so the largest entry of u is real
    // positive; keeps rebuilt pairs reproducible across runs
    Eigen::Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = u(imax);
    if (std::abs(pivot) > 0.0) {
      const std::complex<double> phase = std::conj(pivot) / std::abs(pivot);
      u *= phase;
      v *= phase;
    }
    base.eigenfunctions.col(k) = dinv.asDiagonal() * u;
    dual.eigenfunctions.col(k) = dinv.asDiagonal() * v;
  }

  const double scale = svd.singularValues()(0);
  pair.non_unique_isometry =
      (svd.singularValues().minCoeff() <=
       scale * static_cast<double>(n) * 1e-14);
  return pair;
}

DirectedPair build_directed_pair(const Eigen::MatrixXcd& w, int K) {
  const Eigen::Index n = w.rows();
  const double uniform = 1.0 / static_cast<double>(n);
  return build_directed_pair(w, K, Eigen::VectorXd::Constant(n, uniform),
                             Eigen::MatrixXd(n, 0), Metric{});
}

DirectedPair identity_pair(const SpectralSystem& system) {
  DirectedPair pair;
  pair.base = system;
  pair.dual = system;
  return pair;
}

Eigen::MatrixXcd shifted_gaussian_kernel(const Eigen::MatrixXd& points,
                                         double t,
                                         const Eigen::VectorXd& z_star,
                                         const Eigen::VectorXd& weights) {
  const Eigen::Index n = points.rows();
  if (t <= 0.0)
    throw std::invalid_argument("shifted_gaussian_kernel: t must be > 0");
  if (z_star.size() != points.cols())
    throw std::invalid_argument(
        "shifted_gaussian_kernel: shift dimension != point dimension");
  if (weights.size() != n)
    throw std::invalid_argument("shifted_gaussian_kernel: weight length != N");
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
  Eigen::MatrixXcd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d2 =
          (points.row(i) - points.row(j) - z_star.transpose()).squaredNorm();
      w(i, j) = norm * std::exp(-d2 / t) * weights(j);
    }
  return w;
}

ChungIdentityCheck chung_symmetrization_identity_check(const Eigen::MatrixXcd& w) {
  if (w.rows() != w.cols())
    throw std::invalid_argument("chung check: matrix must be square");
  const Eigen::Index n = w.rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  ChungIdentityCheck out;
  out.lhs = eye - 0.5 * (w + w.adjoint());
  const Eigen::MatrixXcd lazy = 0.5 * (w + eye);
  out.rhs = 2.0 * (eye - lazy * lazy.adjoint()) - 0.5 * (eye - w * w.adjoint());
  out.max_abs_diff = (out.lhs - out.rhs).cwiseAbs().maxCoeff();
  return out;
}

FunctionSamples apply_isometry(const DirectedPair& pair, const FunctionSamples& f) {
  return synthesize(pair.base, coefficients(pair.dual, f));
}

FunctionSamples sigma(const DirectedPair& pair, const LowPassFilter& h, double n,
                      const FunctionSamples& f) {
  if (n <= 0.0) throw std::invalid_argument("sigma: scale n must be > 0");
  Eigen::VectorXcd coeff = coefficients(pair.dual, f);
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    coeff(k) *= h(pair.base.eigenvalues(k) / n);
  return synthesize(pair.base, coeff);
}

std::vector<FunctionSamples> tau_pyramid(const DirectedPair& pair,
                                         const LowPassFilter& h, int max_level,
                                         const FunctionSamples& f) {
  if (max_level < 0) throw std::invalid_argument("tau_pyramid: max_level >= 0");
  const Eigen::VectorXcd coeff = coefficients(pair.dual, f);
  const Eigen::Index k_count = coeff.size();
  std::vector<FunctionSamples> levels;
  levels.reserve(static_cast<size_t>(max_level) + 1);
  Eigen::VectorXd prev(k_count);
  for (int j = 0; j <= max_level; ++j) {
    const double scale = std::pow(2.0, j);
    Eigen::VectorXcd band(k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
      const double cur = h(pair.base.eigenvalues(k) / scale);
      const double inc = (j == 0) ? cur : cur - prev(k);
      band(k) = inc * coeff(k);
      prev(k) = cur;
    }
    levels.push_back(synthesize(pair.base, band));
  }
  return levels;
}

FrameCheck frame_check(const DirectedPair& pair, const LowPassFilter& h,
                       const FunctionSamples& f, double relative_slack) {
  // top scale must have every stored mode on the filter plateau
  const double lam_max = pair.base.max_eigenvalue();
  int max_level = 1;
  while (std::pow(2.0, max_level) <= 2.0 * lam_max && max_level < 60) ++max_level;

  const auto levels = tau_pyramid(pair, h, max_level, f);
  FrameCheck out;
  for (const auto& tau : levels) {
    const double nrm = lp_norm(pair.base, tau, 2.0);
    out.sum_sq += nrm * nrm;
  }
  const double energy_norm = lp_norm(pair.base, apply_isometry(pair, f), 2.0);
  out.energy = energy_norm * energy_norm;
  const double slack = relative_slack * std::max(out.energy, out.sum_sq);
  out.lower_ok = out.sum_sq <= out.energy + slack;
  out.upper_ok = out.energy <= 5.0 * out.sum_sq + slack;
  return out;
}

}  // namespace speclift
