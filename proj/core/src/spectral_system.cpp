#include "speclift/spectral_system.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "line_fit.hpp"

namespace speclift {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Laplacian: return "laplacian";
    case Provenance::SvdLeft: return "svd-left";
    case Provenance::SvdRight: return "svd-right";
    case Provenance::Analytic: return "analytic";
  }
  return "analytic";
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "laplacian") return Provenance::Laplacian;
  if (name == "svd-left") return Provenance::SvdLeft;
  if (name == "svd-right") return Provenance::SvdRight;
  if (name == "analytic") return Provenance::Analytic;
  throw std::invalid_argument("unknown provenance: " + name);
}

double SpectralSystem::distance(Eigen::Index i, Eigen::Index j) const {
  switch (metric.kind) {
    case MetricKind::Euclidean:
      return (points.row(i) - points.row(j)).norm();
    case MetricKind::CircleArc: {
      const double two_pi = 2.0 * std::numbers::pi;
      double d = std::fabs(points(i, 0) - points(j, 0));
      d = std::fmod(d, two_pi);
      return std::min(d, two_pi - d);
    }
    case MetricKind::SphereGeodesic: {
      double c = points.row(i).dot(points.row(j));
      c = std::clamp(c, -1.0, 1.0);
      return std::acos(c);
    }
    case MetricKind::Explicit:
      return metric.table(i, j);
  }
  return 0.0;
}

double orthonormality_residual(const SpectralSystem& system) {
  const Eigen::MatrixXcd weighted =
      system.weights.asDiagonal() * system.eigenfunctions;
  Eigen::MatrixXcd gram = system.eigenfunctions.adjoint() * weighted;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

void validate(const SpectralSystem& system, double tol) {
  const Eigen::Index n = system.size();
  if (system.eigenfunctions.rows() != n)
    throw std::invalid_argument("system: eigenfunction rows != point count");
  if (system.eigenfunctions.cols() != system.modes())
    throw std::invalid_argument("system: eigenfunction cols != eigenvalue count");
  if ((system.weights.array() <= 0.0).any())
    throw std::invalid_argument("system: measure weights must be positive");
  for (Eigen::Index k = 0; k + 1 < system.modes(); ++k)
    if (system.eigenvalues(k) > system.eigenvalues(k + 1) + 1e-12)
      throw std::invalid_argument("system: eigenvalues must be nondecreasing");
  if (system.modes() > 0 && system.eigenvalues(0) < -1e-12)
    throw std::invalid_argument("system: eigenvalues must be nonnegative");
  if (system.metric.kind == MetricKind::Explicit) {
    const auto& m = system.metric.table;
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("system: metric table shape mismatch");
    if ((m.diagonal().array().abs() > 1e-12).any())
      throw std::invalid_argument("system: metric diagonal must be zero");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("system: metric must be symmetric");
  }
  if (system.orthonormal && orthonormality_residual(system) > tol)
    throw std::invalid_argument("system: orthonormality residual above tolerance");
}

SpectralSystem build_undirected_system(const Eigen::MatrixXd& points,
                                       double epsilon, int K,
                                       bool normalized) {
  const Eigen::Index n = points.rows();
  if (!points.allFinite())
    throw std::invalid_argument("build_undirected_system: non-finite coordinates");
  if (epsilon <= 0.0)
    throw std::invalid_argument("build_undirected_system: epsilon must be > 0");
  if (K < 1 || K > n)
    throw std::invalid_argument("build_undirected_system: need 1 <= K <= N");

  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      w(i, j) = std::exp(-(points.row(i) - points.row(j)).squaredNorm() / epsilon);

  const Eigen::VectorXd deg = w.rowwise().sum();
  Eigen::MatrixXd lap;
  if (normalized) {
    // symmetric normalization keeps the solver self-adjoint
    const Eigen::VectorXd dinv = deg.array().rsqrt();
    lap = Eigen::MatrixXd::Identity(n, n) -
          dinv.asDiagonal() * w * dinv.asDiagonal();
  } else {
    lap = Eigen::MatrixXd(deg.asDiagonal()) - w;
  }
  lap = 0.5 * (lap + lap.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("build_undirected_system: eigendecomposition failed");

  SpectralSystem system;
  system.points = points;
  system.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  system.metric.kind = MetricKind::Euclidean;
  system.provenance = Provenance::Laplacian;
  system.eigenvalues.resize(K);
  system.eigenfunctions.resize(n, K);
  const double vec_scale = std::sqrt(static_cast<double>(n));
  for (int k = 0; k < K; ++k) {
    // eigenvalues come out ascending from SelfAdjointEigenSolver
    system.eigenvalues(k) = std::sqrt(std::max(solver.eigenvalues()(k), 0.0));
    system.eigenfunctions.col(k) =
        (vec_scale * solver.eigenvectors().col(k)).cast<std::complex<double>>();
  }
  system.orthonormal = true;

  const double residual =
      (lap * solver.eigenvectors().leftCols(K) -
       solver.eigenvectors().leftCols(K) *
           solver.eigenvalues().head(K).asDiagonal())
          .norm();
  if (residual > 1e-6 * std::max(1.0, lap.norm()))
    throw std::runtime_error(
        "build_undirected_system: eigensolver residual too large: " +
        std::to_string(residual));
  return system;
}

Eigen::VectorXcd coefficients(const SpectralSystem& system,
                              const FunctionSamples& f) {
  if (f.size() != system.size())
    throw std::invalid_argument("coefficients: sample length != system size");
  return system.eigenfunctions.adjoint() * (system.weights.asDiagonal() * f);
}

FunctionSamples synthesize(const SpectralSystem& system,
                           const Eigen::VectorXcd& coeff) {
  if (coeff.size() != system.modes())
    throw std::invalid_argument("synthesize: coefficient length != mode count");
  return system.eigenfunctions * coeff;
}

std::complex<double> heat_kernel(const SpectralSystem& system, double t,
                                 Eigen::Index i, Eigen::Index j) {
  if (t <= 0.0) throw std::invalid_argument("heat_kernel: t must be > 0");
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < system.modes(); ++k) {
    const double lam = system.eigenvalues(k);
    acc += std::exp(-lam * lam * t) * system.eigenfunctions(i, k) *
           std::conj(system.eigenfunctions(j, k));
  }
  return acc;
}

double ball_measure(const SpectralSystem& system, Eigen::Index i, double r) {
  if (r < 0.0) throw std::invalid_argument("ball_measure: r must be >= 0");
  double mass = 0.0;
  for (Eigen::Index j = 0; j < system.size(); ++j)
    if (system.distance(i, j) <= r) mass += system.weights(j);
  return mass;
}

double lp_norm(const SpectralSystem& system, const FunctionSamples& f, double p) {
  if (f.size() != system.size())
    throw std::invalid_argument("lp_norm: sample length != system size");
  if (std::isinf(p)) return f.cwiseAbs().maxCoeff();
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  const double s =
      (system.weights.array() * f.cwiseAbs().array().pow(p)).sum();
  return std::pow(s, 1.0 / p);
}

GaussianBoundFit estimate_gaussian_bound(const SpectralSystem& system,
                                         const std::vector<double>& t_grid) {
  if (t_grid.empty())
    throw std::invalid_argument("estimate_gaussian_bound: empty t grid");
  const Eigen::Index n = system.size();

  // on-diagonal scaling: sup_x K_t(x,x) ~ c1 t^{-q/2}
  std::vector<double> log_t, log_diag;
  for (double t : t_grid) {
    double sup = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      sup = std::max(sup, std::abs(heat_kernel(system, t, i, i)));
    if (sup > 0.0) {
      log_t.push_back(std::log(t));
      log_diag.push_back(std::log(sup));
    }
  }
  GaussianBoundFit fit;
  if (log_t.size() >= 2) {
    const detail::LineFit line = detail::fit_line(log_t, log_diag);
    fit.q_hat = std::max(0.0, -2.0 * line.slope);
    fit.c1_hat = std::exp(line.intercept);
  } else {
    fit.q_hat = 0.0;
    fit.c1_hat = log_diag.empty() ? 0.0 : std::exp(log_diag.front());
  }

  // off-diagonal decay: log|K_t(x,y)| - log c1 + (q/2) log t vs d(x,y)^2/t
  std::vector<double> xs, ys;
  const Eigen::Index stride = std::max<Eigen::Index>(1, n / 16);
  double max_distance = 0.0;
  for (double t : t_grid) {
    for (Eigen::Index i = 0; i < n; i += stride) {
      for (Eigen::Index j = i + stride; j < n; j += stride) {
        const double d = system.distance(i, j);
        max_distance = std::max(max_distance, d);
        const double mag = std::abs(heat_kernel(system, t, i, j));
        if (mag < 1e-300 || d <= 0.0) continue;
        xs.push_back(d * d / t);
        ys.push_back(std::log(mag) - std::log(fit.c1_hat) +
                     0.5 * fit.q_hat * std::log(t));
      }
    }
  }
  if (n > 1 && max_distance <= 0.0)
    throw std::invalid_argument(
        "estimate_gaussian_bound: degenerate fit, all distances zero");
  if (xs.size() >= 2) fit.c2_hat = std::max(0.0, -detail::fit_line(xs, ys).slope);

  // largest relative violation of |K_t(x,y)| <= c1 t^{-q/2} exp(-c2 d^2/t)
  for (double t : t_grid) {
    for (Eigen::Index i = 0; i < n; i += stride) {
      for (Eigen::Index j = i; j < n; j += stride) {
        const double d = system.distance(i, j);
        const double bound = fit.c1_hat * std::pow(t, -0.5 * fit.q_hat) *
                             std::exp(-fit.c2_hat * d * d / t);
        const double mag = std::abs(heat_kernel(system, t, i, j));
        if (bound > 0.0)
          fit.max_violation = std::max(fit.max_violation, mag / bound - 1.0);
      }
    }
  }
  fit.max_violation = std::max(fit.max_violation, 0.0);
  return fit;
}

}  // namespace speclift
