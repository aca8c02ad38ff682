#include "speclift/filters.hpp"

#include <cmath>
#include <limits>

namespace speclift {

namespace {

// Coefficients of the monotone transition polynomial
//   xi_S(x) = x^{S+1} * sum_{k=0}^{S} C(S+k,k) C(2S+1,S-k) (-x)^k,
// the unique degree-(2S+1) polynomial with xi(0)=0, xi(1)=1 and S vanishing
// derivatives at both ends. Satisfies xi(x) + xi(1-x) = 1.
std::vector<long double> transition_coefficients(int S) {
  std::vector<long double> coeff(static_cast<size_t>(S) + 1);
  long double binom_sk = 1.0L;  // C(S+k, k)
  long double binom_2s = 0.0L;  // C(2S+1, S-k)
  // C(2S+1, S) seed
  binom_2s = 1.0L;
  for (int i = 1; i <= S; ++i) binom_2s = binom_2s * (S + 1 + i) / i;
  long double sign = 1.0L;
  for (int k = 0; k <= S; ++k) {
    coeff[static_cast<size_t>(k)] = sign * binom_sk * binom_2s;
    sign = -sign;
    binom_sk = binom_sk * (S + k + 1) / (k + 1);
    // C(2S+1, S-k-1) = C(2S+1, S-k) * (S-k) / (S+k+2)
    binom_2s = binom_2s * (S - k) / (S + k + 2);
  }
  return coeff;
}

long double eval_transition(const std::vector<long double>& coeff, long double x) {
  const int S = static_cast<int>(coeff.size()) - 1;
  long double acc = 0.0L;
  for (int k = S; k >= 0; --k) acc = acc * x + coeff[static_cast<size_t>(k)];
  long double xp = 1.0L;
  for (int i = 0; i <= S; ++i) xp *= x;
  return xp * acc;
}

double exp_transition(double t) {
  // g(s) = exp(-1/s) glue: value 1 at t=0, 0 at t=1, C-infinity, decreasing
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

}  // namespace

LowPassFilter::LowPassFilter(FilterProfile profile, int order)
    : profile_(profile), order_(order) {
  if (profile_ == FilterProfile::SmoothedPolynomial)
    poly_ = transition_coefficients(order_);
}

LowPassFilter LowPassFilter::smoothed_polynomial(int smoothness_order) {
  if (smoothness_order < 1)
    throw std::invalid_argument(
        "smoothed_polynomial: smoothness_order must be >= 1 "
        "(use make_cutoff_filter for the non-smooth cutoff)");
  return LowPassFilter(FilterProfile::SmoothedPolynomial, smoothness_order);
}

LowPassFilter LowPassFilter::exp_plateau() {
  return LowPassFilter(FilterProfile::ExpPlateau,
                       std::numeric_limits<int>::max());
}

LowPassFilter LowPassFilter::cutoff() {
  return LowPassFilter(FilterProfile::Cutoff, 0);
}

double LowPassFilter::operator()(double u) const {
  if (std::isnan(u)) throw std::invalid_argument("LowPassFilter: NaN input");
  u = std::fabs(u);
  if (profile_ == FilterProfile::Cutoff) return u < 1.0 ? 1.0 : 0.0;
  if (u < 0.5) return 1.0;
  if (u >= 1.0) return 0.0;
  if (profile_ == FilterProfile::ExpPlateau) return exp_transition(2.0 * u - 1.0);
  const long double x = 2.0L * static_cast<long double>(u) - 1.0L;
  const long double v = 1.0L - eval_transition(poly_, x);
  if (v <= 0.0L) return 0.0;
  if (v >= 1.0L) return 1.0;
  return static_cast<double>(v);
}

std::string LowPassFilter::profile_name() const {
  switch (profile_) {
    case FilterProfile::SmoothedPolynomial: return "smoothed-polynomial";
    case FilterProfile::ExpPlateau: return "exp-plateau";
    case FilterProfile::Cutoff: return "cutoff";
  }
  return "unknown";
}

LowPassFilter make_filter(int smoothness_order) {
  return LowPassFilter::smoothed_polynomial(smoothness_order);
}

LowPassFilter make_filter(int smoothness_order, FilterProfile profile) {
  switch (profile) {
    case FilterProfile::SmoothedPolynomial:
      return LowPassFilter::smoothed_polynomial(smoothness_order);
    case FilterProfile::ExpPlateau:
      return LowPassFilter::exp_plateau();
    case FilterProfile::Cutoff:
      return LowPassFilter::cutoff();
  }
  throw std::invalid_argument("make_filter: unknown profile");
}

LowPassFilter make_cutoff_filter() { return LowPassFilter::cutoff(); }

}  // namespace speclift
