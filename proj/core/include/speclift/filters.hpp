#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace speclift {

enum class FilterProfile {
  SmoothedPolynomial,  // degree-(2S+1) spline transition, C^S on the whole line
  ExpPlateau,          // C-infinity bump-glued transition
  Cutoff               // plain indicator of [0,1)
};

/// Low-pass filter h: even, h == 1 on [0,1/2), h == 0 on [1,inf),
/// non-increasing on [0,inf). Immutable value object; eval never allocates.
/// Safe for concurrent reads.
class LowPassFilter {
public:
  static LowPassFilter smoothed_polynomial(int smoothness_order);
  static LowPassFilter exp_plateau();
  static LowPassFilter cutoff();

  /// h(u). Even in u; rejects NaN.
  double operator()(double u) const;
  double eval(double u) const { return (*this)(u); }

  /// Number of continuous derivatives guaranteed on R.
  /// 0 for the cutoff profile; a large sentinel for the exp profile.
  int smoothness_order() const noexcept { return order_; }
  FilterProfile profile() const noexcept { return profile_; }
  bool is_smooth() const noexcept { return profile_ != FilterProfile::Cutoff; }

  std::string profile_name() const;

private:
  LowPassFilter(FilterProfile profile, int order);

  FilterProfile profile_;
  int order_;
  // coefficients of the transition polynomial xi with h(u) = 1 - xi(2u-1)
  // on [1/2,1]; highest degree first (Horner order)
  std::vector<long double> poly_;
};

/// Smooth filter of the default profile. smoothness_order >= 1; the cutoff
/// has its own constructor.
LowPassFilter make_filter(int smoothness_order);
LowPassFilter make_filter(int smoothness_order, FilterProfile profile);

/// h(t) = 1 for t in [0,1), 0 for t >= 1. Flagged non-smooth (order 0).
LowPassFilter make_cutoff_filter();

}  // namespace speclift
