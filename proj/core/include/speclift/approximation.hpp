#pragma once

#include <vector>

#include "speclift/directed_pair.hpp"
#include "speclift/filters.hpp"
#include "speclift/spectral_system.hpp"

namespace speclift {

struct BesovParams {
  double p = 2;      // integrability, in [1, inf]
  double rho = 2;    // refinement exponent, in (0, inf]; +infinity = sup-type
  double gamma = 1;  // smoothness exponent, > 0
};

/// Nonnegative per-level magnitudes indexed by dyadic level j = 0,1,...
struct DecaySequence {
  std::vector<double> entries;
};

/// Exact L2 tail: E_{n,2}(f)^2 = sum_{lambda_k >= n} |fhat(k)|^2.
/// Requires an orthonormal system.
double degree_of_approx_l2(const SpectralSystem& system, const FunctionSamples& f,
                           double n);

struct LpApproxResult {
  double value = 0;
  bool near_best = true;  // surrogate via the filtered operator, not the infimum
};

/// Near-best surrogate for E_{n,p}: ||f - sigma_n(f)||_p with the given smooth
/// filter on the single system. Exact zero for f supported on the filter
/// plateau (lambda_k < n/2).
LpApproxResult degree_of_approx_lp(const SpectralSystem& system,
                                   const FunctionSamples& f, double n, double p,
                                   const LowPassFilter& h);

/// Sequence norm (sum_j 2^{gamma rho j} |a_j|^rho)^{1/rho};
/// sup_j 2^{j gamma} |a_j| when rho is +infinity.
double besov_seq_norm(const DecaySequence& seq, double rho, double gamma);

struct SmoothnessReport {
  double gamma_hat = 0;
  double fit_residual = 0;       // RMS residual of the log2 fit
  std::vector<int> levels_used;
  bool band_limited = false;     // trailing levels vanished below the floor
  double p = 2;
};

class InsufficientLevelsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit of log2 ||tau_j|| against j over levels above the 1e-12
/// noise floor; gamma_hat is minus the slope (the largest gamma with the
/// norms in the sup-type sequence class, up to truncation error).
/// Throws InsufficientLevelsError with fewer than 3 usable levels.
SmoothnessReport classify_smoothness(const DecaySequence& pyramid_norms, double p);

}  // namespace speclift
