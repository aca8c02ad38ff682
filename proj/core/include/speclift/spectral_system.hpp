#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclift {

// Samples of a function on a system's point set, aligned with its points.
using FunctionSamples = Eigen::VectorXcd;

enum class MetricKind {
  Euclidean,        // from point coordinates
  CircleArc,        // points hold angles; d = arc distance mod 2*pi
  SphereGeodesic,   // points are unit 3-vectors; d = acos(<x,y>)
  Explicit          // dense table
};

struct Metric {
  MetricKind kind = MetricKind::Euclidean;
  Eigen::MatrixXd table;  // used only when kind == Explicit
};

enum class Provenance { Laplacian, SvdLeft, SvdRight, Analytic };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

/// Finite discretization of a metric measure space with a spectral table:
/// points, quadrature weights of the measure, a metric, nondecreasing
/// frequencies lambda_k >= 0 and eigenfunction samples phi_k(x_i).
/// Immutable after construction; all operations on it are read-only and
/// safe to call concurrently.
struct SpectralSystem {
  Eigen::MatrixXd points;           // N x D (D may be 0 for opaque points)
  Eigen::VectorXd weights;          // N, all > 0
  Eigen::VectorXd eigenvalues;      // K, nondecreasing, >= 0
  Eigen::MatrixXcd eigenfunctions;  // N x K, column k samples phi_k
  Metric metric;
  Provenance provenance = Provenance::Analytic;
  bool orthonormal = false;  // columns orthonormal in L2(weights)

  Eigen::Index size() const { return weights.size(); }
  Eigen::Index modes() const { return eigenvalues.size(); }
  double max_eigenvalue() const {
    return modes() > 0 ? eigenvalues(modes() - 1) : 0.0;
  }
  double distance(Eigen::Index i, Eigen::Index j) const;
  double total_mass() const { return weights.sum(); }
};

/// Throws std::invalid_argument if a structural invariant is violated
/// (weight signs, eigenvalue ordering, metric shape, orthonormality when
/// flagged). `tol` bounds the orthonormality residual.
void validate(const SpectralSystem& system, double tol = 1e-8);

/// max_{j,k} |<phi_j, phi_k>_w - delta_jk|.
double orthonormality_residual(const SpectralSystem& system);

/// Gaussian-kernel graph construction: W_ij = exp(-|x_i-x_j|^2/epsilon),
/// L = diag(row sums) - W (or the symmetric-normalized variant), K smallest
/// eigenpairs, lambda_k = sqrt(eigenvalue). Weights default to 1/N.
SpectralSystem build_undirected_system(const Eigen::MatrixXd& points,
                                       double epsilon, int K,
                                       bool normalized = false);

/// Fourier coefficients against this system: fhat(k) = sum_i w_i f_i conj(phi_k(x_i)).
Eigen::VectorXcd coefficients(const SpectralSystem& system,
                              const FunctionSamples& f);

/// sum_k a_k phi_k sampled on the point set.
FunctionSamples synthesize(const SpectralSystem& system,
                           const Eigen::VectorXcd& coeff);

/// K_t(x_i,x_j) = sum_k exp(-lambda_k^2 t) phi_k(x_i) conj(phi_k(x_j)).
std::complex<double> heat_kernel(const SpectralSystem& system, double t,
                                 Eigen::Index i, Eigen::Index j);

/// Mass of the closed ball of radius r around point i.
double ball_measure(const SpectralSystem& system, Eigen::Index i, double r);

/// Discrete L^p(mu) norm; p = infinity gives max_i |f_i|.
double lp_norm(const SpectralSystem& system, const FunctionSamples& f, double p);

struct GaussianBoundFit {
  double q_hat = 0;           // on-diagonal exponent: sup_x K_t(x,x) ~ c t^{-q/2}
  double c1_hat = 0;          // fitted prefactor
  double c2_hat = 0;          // fitted off-diagonal decay rate in exp(-c2 d^2/t)
  double max_violation = 0;   // largest relative excess over the fitted bound
};

/// Fits the heat-kernel upper-bound constants from on- and off-diagonal
/// samples over t_grid in (0,1]. Diagnostic, not a proof.
GaussianBoundFit estimate_gaussian_bound(const SpectralSystem& system,
                                         const std::vector<double>& t_grid);

}  // namespace speclift
