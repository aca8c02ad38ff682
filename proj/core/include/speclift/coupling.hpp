#pragma once

#include <complex>
#include <vector>

#include "speclift/approximation.hpp"
#include "speclift/filters.hpp"
#include "speclift/spectral_system.hpp"

namespace speclift {

// Everything here is pure over immutable systems and couplings; concurrent
// calls are safe. Double sums run in a fixed entry order, so results are
// deterministic.

/// Landmarks shared by two systems: ordinal r maps to point
/// indices_in_1[r] in system 1 and indices_in_2[r] in system 2, carrying
/// probability weights nu (sum to 1).
struct LandmarkSet {
  std::vector<Eigen::Index> indices_in_1;
  std::vector<Eigen::Index> indices_in_2;
  Eigen::VectorXd nu_weights;

  size_t size() const { return indices_in_1.size(); }
};

void validate(const LandmarkSet& landmarks, Eigen::Index n1, Eigen::Index n2);

/// Full-point landmark set for a pair of systems sharing a point set,
/// with nu taken from (normalized) system-1 weights.
LandmarkSet full_landmarks(const SpectralSystem& s1, const SpectralSystem& s2);

struct ConnectionEntry {
  int j = 0;                         // mode index in system 1
  int k = 0;                         // mode index in system 2
  std::complex<double> value{0, 0};  // coupling coefficient A_{j,k}
  double ell = 0;                    // joint eigenvalue attached to (j,k)
};

/// Sparse coupling between two systems' mode families, with a joint
/// eigenvalue per stored entry.
struct ConnectionMatrix {
  std::vector<ConnectionEntry> entries;
  int rows = 0;  // system-1 mode count
  int cols = 0;  // system-2 mode count
};

ConnectionMatrix identity_connection(const SpectralSystem& system);

enum class JointEigenvaluePolicy {
  MaxPair,         // ell = max(lambda_1j, lambda_2k); alpha = 1 band guarantee
  RootSumSquares,  // ell = sqrt(lambda_1j^2 + lambda_2k^2)
  Row              // ell = lambda_1j
};

/// Landmark coupling Gamma_{j,k} = sum_y nu_y conj(phi_1j(y)) phi_2k(y).
/// Entries below 1e-14 in magnitude are dropped.
ConnectionMatrix landmark_connection(const SpectralSystem& s1,
                                     const SpectralSystem& s2,
                                     const LandmarkSet& landmarks,
                                     JointEigenvaluePolicy policy =
                                         JointEigenvaluePolicy::MaxPair);

/// Product-filtered coupling operator mapping samples on system 2 to samples
/// on system 1: sum_{j,k} h(l1j/n) h(l2k/n) Gamma_{j,k} fhat(2;k) phi_1j.
FunctionSamples tensor_sigma(const SpectralSystem& s1, const SpectralSystem& s2,
                             const ConnectionMatrix& gamma, const LowPassFilter& h,
                             double n, const FunctionSamples& f);

/// Jointly-filtered coupling operator:
/// sum over stored (j,k) of h(ell_jk/n) A_{j,k} fhat(2;k) phi_1j.
FunctionSamples joint_sigma(const SpectralSystem& s1, const SpectralSystem& s2,
                            const ConnectionMatrix& a, const LowPassFilter& h,
                            double n, const FunctionSamples& f);

/// Smallest alpha with alpha * ell_jk >= lambda_1j over stored entries
/// (infinity if some ell is zero with lambda_1j > 0); when finite, the output
/// of joint_sigma at scale n is band-limited to lambda_1 < alpha * n.
double band_limit_factor(const SpectralSystem& s1, const ConnectionMatrix& a);

struct LiftOptions {
  int max_level = 8;               // dyadic scales 2^0 .. 2^max_level
  double tol = 1e-10;              // convergence threshold on the last increment
  double p = 2;                    // norm for increments
  double sufficient_exponent = 0;  // exponent in the reported partial sums
};

struct LiftResult {
  FunctionSamples lift;            // last dyadic iterate
  DecaySequence level_increments;  // ||sigma_{2^{m+1}} f - sigma_{2^m} f||_p
  bool converged = false;
  double beta_hat = 0;  // decay slope of the increments (0 when unfittable)
  // partial sums sum_{m<=M} 2^{m*sufficient_exponent} E_{2^m,p}(system2; f)
  std::vector<double> sufficient_partial_sums;
};

LiftResult tensor_lift(const SpectralSystem& s1, const SpectralSystem& s2,
                       const ConnectionMatrix& gamma, const LowPassFilter& h,
                       const FunctionSamples& f, const LiftOptions& options);

LiftResult joint_lift(const SpectralSystem& s1, const SpectralSystem& s2,
                      const ConnectionMatrix& a, const LowPassFilter& h,
                      const FunctionSamples& f, const LiftOptions& options);

/// Landmark-infimum cross distance min_y (d1(x1,y) + d2(y,x2)); satisfies both
/// mixed triangle inequalities with constant 1.
double joint_distance(const SpectralSystem& s1, const SpectralSystem& s2,
                      const LandmarkSet& landmarks, Eigen::Index i1,
                      Eigen::Index i2);

/// Cross distance on X1 x X2: either the landmark infimum, an explicit table,
/// or (for systems sampled on a shared grid) the system-1 metric applied to
/// paired indices.
struct JointDistance {
  enum class Kind { LandmarkInfimum, Table, SharedGridSystem1 } kind =
      Kind::LandmarkInfimum;
  LandmarkSet landmarks;   // LandmarkInfimum
  Eigen::MatrixXd table;   // Table

  double operator()(const SpectralSystem& s1, const SpectralSystem& s2,
                    Eigen::Index i1, Eigen::Index i2) const;
};

/// Cross-space diffusion distance at diffusion time t:
/// sqrt(K_2t(1;x1,x1) + K_2t(2;x2,x2)
///      - 2 Re sum_{j,k} exp(-t(l1j^2+l2k^2)) Gamma_jk phi_1j(x1) conj(phi_2k(x2))).
/// Radicands below -1e-10 are reported as inconsistencies; small negatives
/// are clamped to zero.
double diffusion_distance(const SpectralSystem& s1, const SpectralSystem& s2,
                          const ConnectionMatrix& gamma, double t,
                          Eigen::Index i1, Eigen::Index i2);

/// sum over stored (j,k) of exp(-ell_jk^2 t) A_jk phi_1j(x1) conj(phi_2k(x2)).
std::complex<double> joint_heat_kernel(const SpectralSystem& s1,
                                       const SpectralSystem& s2,
                                       const ConnectionMatrix& a, double t,
                                       Eigen::Index i1, Eigen::Index i2);

struct JointGaussianDiagnostics {
  double q_hat = 0;            // growth exponent of the filtered partial sums
  double t_exponent_hat = 0;   // fitted t-prefactor exponent of |K_t|
  double c2_hat = 0;           // fitted cross-distance decay rate
  double max_on_diag_violation = 0;
  double max_off_diag_violation = 0;
};

/// Fits the two-system heat-bound constants: Q from the growth of
/// sum_{ell<n} |A phi1 phi2| in n, the t-exponent and decay rate from |K_t|
/// against the joint distance. Diagnostic only.
JointGaussianDiagnostics verify_joint_gaussian(
    const SpectralSystem& s1, const SpectralSystem& s2, const ConnectionMatrix& a,
    const JointDistance& d12, const std::vector<double>& t_grid,
    const std::vector<double>& n_grid);

}  // namespace speclift
