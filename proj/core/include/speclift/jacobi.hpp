#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "speclift/coupling.hpp"
#include "speclift/spectral_system.hpp"

namespace speclift {

/// Orthonormal Jacobi polynomials for weight (1-x)^alpha (1+x)^beta on [-1,1],
/// evaluated by the orthonormal three-term recurrence (positive leading
/// coefficients). Recurrence runs in extended precision; stable well past
/// degree 100.
class JacobiBasis {
public:
  JacobiBasis(double alpha, double beta, int max_degree);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  int max_degree() const noexcept { return max_degree_; }

  /// p_k(x) for 0 <= k <= max_degree, x in [-1,1].
  double eval(int k, double x) const;

  /// Extended-precision value; keeps exact-identity checks below rounding.
  long double eval_extended(int k, long double x) const;

  /// All degrees 0..max_degree at once (one recurrence sweep).
  Eigen::VectorXd eval_all(double x) const;

private:
  double alpha_, beta_;
  int max_degree_;
  std::vector<long double> recur_a_;   // monic diagonal terms
  std::vector<long double> recur_sb_;  // sqrt of monic off-diagonal terms
  long double inv_sqrt_mass_;          // 1/sqrt(integral of the weight)
};

double jacobi_eval(const JacobiBasis& basis, int k, double x);

struct QuadratureRule {
  Eigen::VectorXd nodes;    // ascending in [-1,1]
  Eigen::VectorXd weights;
};

/// Gauss-Legendre rule via the Golub-Welsch eigenvalue method; exact for
/// polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

/// a_{j,k}^{(m)} = int p_j^{(|m|,1/2)} p_k^{(|m|,1)} (1-x)^{|m|} (1+x) dx,
/// 0 <= k <= j, by Gauss-Legendre quadrature of sufficient order.
double connection_coeff(int m, int j, int k);

struct UltraIdentityCheck {
  double lhs = 0, rhs = 0, abs_diff = 0;
};

/// Quadratic-transformation identity for orthonormal Jacobi polynomials:
/// p_{2j+1}^{(a,a)}(cos t) = 2^{a/2+3/4} cos t p_j^{(a,1/2)}(cos 2t).
UltraIdentityCheck verify_jacobi_ultra(double alpha, int j, double theta);

/// Hemisphere (geodesic metric, probability area measure) coupled with the
/// unit disc (Euclidean metric, plain area measure), tabulated on a shared
/// (theta, phi) product grid: Gauss-Legendre in cos theta on [0,1] times
/// equispaced phi. Carries two couplings with different exact roles:
///  - connection: landmark coupling under the hemisphere measure; the dyadic
///    lift with it reproduces the pointwise lift of band-limited disc
///    functions exactly at the stored truncation.
///  - synthesis_connection: scaled expansion coefficients of each hemisphere
///    eigenfunction in the disc family; satisfies the pointwise synthesis
///    identity sum_{k,m} A_{(j,l),(k,m)} phi2_{(k,m)} = phi1_{(j,l)}.
struct HemisphereDiscPair {
  SpectralSystem hemisphere;  // Xi_1
  SpectralSystem disc;        // Xi_2
  ConnectionMatrix connection;
  ConnectionMatrix synthesis_connection;
  LandmarkSet landmarks;  // full shared grid, nu = hemisphere measure
  JointDistance cross_distance;  // d_12 = hemisphere geodesic on paired points
  std::vector<std::pair<int, int>> hemisphere_modes;  // column -> (j, l)
  std::vector<std::pair<int, int>> disc_modes;        // column -> (k, m)
  int n_theta = 0, n_phi = 0, j_max = 0, m_max = 0;
  double hemisphere_residual = 0, disc_residual = 0;
};

/// Grid sizes must resolve the truncation: n_theta > 2 j_max + m_max + 2 and
/// n_phi > 2 m_max keep the discrete inner products exact; orthonormality is
/// validated to 1e-6 and failure reported with the residual.
HemisphereDiscPair build_hemisphere_disc_pair(int n_theta, int n_phi, int j_max,
                                              int m_max);

/// Equispaced circle: theta_i = 2 pi i / N, weights 2 pi / N, frequencies
/// 0,1,1,2,2,..., normalized constant/cosine/sine modes. Discrete
/// orthonormality is exact for N >= 2K+1.
SpectralSystem build_circle_system(int n_points, int max_frequency);

}  // namespace speclift
