#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "speclift/filters.hpp"
#include "speclift/spectral_system.hpp"

namespace speclift {

struct PolarDecomposition {
  Eigen::MatrixXcd P;  // positive semi-definite factor, P = sqrt(W W*)
  Eigen::MatrixXcd U;  // unitary factor with P U = W
  bool unique = true;  // false when W is rank-deficient
  int rank = 0;
  double residual = 0.0;  // ||P U - W||_F / ||W||_F
};

/// Polar form W = P U via SVD. When W is rank-deficient the unitary factor
/// is completed deterministically from the SVD bases and flagged non-unique.
PolarDecomposition polar_decompose(const Eigen::MatrixXcd& w);

/// Two coupled systems sharing points, measure and metric: base carries the
/// left singular vectors {phi_k}, dual the right ones {psi_k = U* phi_k},
/// both against the same ascending singular values. Immutable after build.
struct DirectedPair {
  SpectralSystem base;
  SpectralSystem dual;
  bool non_unique_isometry = false;

  Eigen::Index size() const { return base.size(); }
  Eigen::Index modes() const { return base.modes(); }
};

/// Measure-weighted SVD of a weight matrix acting on sample vectors:
/// the SVD is taken on D^{1/2} W D^{-1/2} (D = diag weights) and the singular
/// vectors are rescaled back, so both families are orthonormal in L2(weights)
/// and W_ij = sum_k lambda_k phi_k(x_i) conj(psi_k(x_j)) w_j.
/// Keeps the K smallest singular triples, sorted ascending.
DirectedPair build_directed_pair(const Eigen::MatrixXcd& w, int K);
DirectedPair build_directed_pair(const Eigen::MatrixXcd& w, int K,
                                 const Eigen::VectorXd& weights,
                                 const Eigen::MatrixXd& points,
                                 const Metric& metric);

/// Degenerate pair with dual == base; directed operators then reduce to the
/// single-system (undirected) ones.
DirectedPair identity_pair(const SpectralSystem& system);

/// Directed Gaussian kernel with drift: W_ij = (2 pi t)^{-1/2}
/// exp(-|x_i - x_j - z*|^2 / t) w_j. Symmetric exactly when z* = 0, and
/// W(z*)^T = W(-z*) entrywise.
Eigen::MatrixXcd shifted_gaussian_kernel(const Eigen::MatrixXd& points,
                                         double t,
                                         const Eigen::VectorXd& z_star,
                                         const Eigen::VectorXd& weights);

struct ChungIdentityCheck {
  Eigen::MatrixXcd lhs;
  Eigen::MatrixXcd rhs;
  double max_abs_diff = 0.0;
};

/// Algebraic identity relating the symmetrized graph Laplacian to the
/// lazy-walk and co-linkage forms:
///   I - (W+W*)/2 = 2(I - ((W+I)/2)((W+I)*/2)) - (1/2)(I - W W*).
ChungIdentityCheck chung_symmetrization_identity_check(const Eigen::MatrixXcd& w);

/// Uf = sum_k <f, psi_k> phi_k (partial isometry mapping dual to base modes).
FunctionSamples apply_isometry(const DirectedPair& pair, const FunctionSamples& f);

/// Reconstruction operator at scale n > 0:
/// sigma_n(f) = sum_k h(lambda_k/n) fhat(dual;k) phi_k. Lies in
/// span{phi_k : lambda_k < n} by the filter support.
FunctionSamples sigma(const DirectedPair& pair, const LowPassFilter& h, double n,
                      const FunctionSamples& f);

/// Dyadic analysis pyramid: tau_0 = sigma_1, tau_j = sigma_{2^j} - sigma_{2^{j-1}}.
/// Partial sums telescope to sigma_{2^J}.
std::vector<FunctionSamples> tau_pyramid(const DirectedPair& pair,
                                         const LowPassFilter& h, int max_level,
                                         const FunctionSamples& f);

struct FrameCheck {
  double sum_sq = 0;   // sum_j ||tau_j||_2^2
  double energy = 0;   // ||Uf||_2^2
  bool lower_ok = false;
  bool upper_ok = false;
};

/// Checks sum_j ||tau_j||^2 <= ||Uf||^2 <= 5 sum_j ||tau_j||^2 with the pyramid
/// deep enough that sigma at the top scale is the identity on stored modes.
FrameCheck frame_check(const DirectedPair& pair, const LowPassFilter& h,
                       const FunctionSamples& f, double relative_slack = 1e-9);

}  // namespace speclift
