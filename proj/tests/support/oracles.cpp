#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclift::testing {

namespace {

// Bland's rule tableau simplex on [A | I] x = b, x >= 0, min c^T x.
// Rows are pre-flipped so b >= 0; phase 1 drives artificials out.
class Tableau {
public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
          const Eigen::VectorXd& c)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())) {
    // slack per row; artificial per row with negative rhs
    std::vector<int> needs_artificial;
    for (int i = 0; i < m_; ++i)
      if (b(i) < 0.0) needs_artificial.push_back(i);
    const int n_art = static_cast<int>(needs_artificial.size());
    cols_ = n_ + m_ + n_art;
    t_.setZero(m_ + 1, cols_ + 1);
    basis_.resize(m_);

    for (int i = 0; i < m_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) t_(i, j) = sign * a(i, j);
      t_(i, n_ + i) = sign;  // slack
      t_(i, cols_) = sign * b(i);
      basis_[i] = n_ + i;
    }
    int art = 0;
    for (int i : needs_artificial) {
      t_(i, n_ + m_ + art) = 1.0;
      basis_[i] = n_ + m_ + art;
      ++art;
    }
    objective_ = c;
    first_artificial_ = n_ + m_;
  }

  double solve(Eigen::VectorXd* solution) {
    if (first_artificial_ < cols_) {
      // phase 1: minimize the artificial sum
      set_phase1_costs();
      run();
      if (t_(m_, cols_) > 1e-9)
        throw std::runtime_error("simplex: infeasible");
    }
    set_costs(objective_);
    run();
    if (solution) {
      solution->setZero(n_);
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) (*solution)(basis_[i]) = t_(i, cols_);
    }
    return -t_(m_, cols_);
  }

private:
  void set_phase1_costs() {
    Eigen::VectorXd costs = Eigen::VectorXd::Zero(cols_);
    for (int j = first_artificial_; j < cols_; ++j) costs(j) = 1.0;
    set_costs_full(costs);
  }

  void set_costs(const Eigen::VectorXd& c) {
    Eigen::VectorXd costs = Eigen::VectorXd::Zero(cols_);
    costs.head(n_) = c;
    // once phase 1 is done, price artificial columns out of contention
    for (int j = first_artificial_; j < cols_; ++j) costs(j) = 1e30;
    set_costs_full(costs);
  }

  void set_costs_full(const Eigen::VectorXd& costs) {
    t_.row(m_).setZero();
    for (int j = 0; j < cols_; ++j) t_(m_, j) = costs(j);
    for (int i = 0; i < m_; ++i)
      t_.row(m_) -= costs(basis_[i]) * t_.row(i);
  }

  void run() {
    for (int iter = 0; iter < 20000; ++iter) {
      int pivot_col = -1;
      for (int j = 0; j < cols_; ++j)
        if (t_(m_, j) < -1e-11) {  // Bland: first improving column
          pivot_col = j;
          break;
        }
      if (pivot_col < 0) return;
      int pivot_row = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, pivot_col) > 1e-11) {
          const double ratio = t_(i, cols_) / t_(i, pivot_col);
          if (pivot_row < 0 || ratio < best_ratio - 1e-15 ||
              (std::fabs(ratio - best_ratio) <= 1e-15 &&
               basis_[i] < basis_[pivot_row])) {
            pivot_row = i;
            best_ratio = ratio;
          }
        }
      }
      if (pivot_row < 0) throw std::runtime_error("simplex: unbounded");
      pivot(pivot_row, pivot_col);
    }
    throw std::runtime_error("simplex: iteration limit");
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
    }
    basis_[row] = col;
  }

  int m_, n_, cols_ = 0, first_artificial_ = 0;
  Eigen::MatrixXd t_;
  Eigen::VectorXd objective_;
  std::vector<int> basis_;
};

}  // namespace

double simplex_min(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                   const Eigen::VectorXd& c, Eigen::VectorXd* solution) {
  Tableau tableau(a, b, c);
  return tableau.solve(solution);
}

double linf_best_approx(const Eigen::MatrixXd& basis, const Eigen::VectorXd& f) {
  const int n = static_cast<int>(basis.rows());
  const int m = static_cast<int>(basis.cols());
  if (n > 64) throw std::invalid_argument("linf_best_approx: oracle is for N <= 64");
  // variables: c+ (m), c- (m), t (1); constraints: +-(f - B(c+ - c-)) <= t
  Eigen::MatrixXd a(2 * n, 2 * m + 1);
  Eigen::VectorXd b(2 * n), cost = Eigen::VectorXd::Zero(2 * m + 1);
  cost(2 * m) = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      a(i, j) = -basis(i, j);
      a(i, m + j) = basis(i, j);
      a(n + i, j) = basis(i, j);
      a(n + i, m + j) = -basis(i, j);
    }
    a(i, 2 * m) = -1.0;
    a(n + i, 2 * m) = -1.0;
    b(i) = -f(i);
    b(n + i) = f(i);
  }
  return simplex_min(a, b, cost, nullptr);
}

std::complex<double> direct_kernel_sum(const SpectralSystem& s1,
                                       const SpectralSystem& s2,
                                       const std::vector<double>& filter_values,
                                       Eigen::Index i, Eigen::Index j) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < s1.modes(); ++k)
    acc += filter_values[static_cast<size_t>(k)] * s1.eigenfunctions(i, k) *
           std::conj(s2.eigenfunctions(j, k));
  return acc;
}

Eigen::VectorXd circle_real_coefficients(const Eigen::VectorXd& samples,
                                         int max_frequency) {
  const int n = static_cast<int>(samples.size());
  const double pi = std::numbers::pi;
  const double w = 2.0 * pi / n;
  Eigen::VectorXd coeff(2 * max_frequency + 1);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += samples(i);
  coeff(0) = w * acc / std::sqrt(2.0 * pi);
  for (int k = 1; k <= max_frequency; ++k) {
    double ac = 0.0, as = 0.0;
    for (int i = 0; i < n; ++i) {
      const double angle = 2.0 * pi * k * i / n;
      ac += samples(i) * std::cos(angle);
      as += samples(i) * std::sin(angle);
    }
    coeff(2 * k - 1) = w * ac / std::sqrt(pi);
    coeff(2 * k) = w * as / std::sqrt(pi);
  }
  return coeff;
}

namespace {

bool is_half_integer(double v) {
  return std::fabs(v - std::floor(v) - 0.5) < 1e-12;
}

// Gauss-Legendre on [-1,1] via the Golub-Welsch tridiagonal eigenproblem
void legendre_rule(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    jm(k - 1, k) = off;
    jm(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jm);
  nodes = solver.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double first = solver.eigenvectors()(0, i);
    weights(i) = 2.0 * first * first;
  }
}

}  // namespace

WeightedRule jacobi_weight_rule(double alpha, double beta, int poly_degree) {
  if (alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("jacobi_weight_rule: exponents must be >= 0");
  const bool half_a = is_half_integer(alpha);
  const bool half_b = is_half_integer(beta);
  WeightedRule rule;
  if (!half_a && !half_b) {
    const int n = (poly_degree + static_cast<int>(alpha + beta)) / 2 + 3;
    Eigen::VectorXd x, w;
    legendre_rule(n, x, w);
    rule.nodes = x;
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i)
      rule.weights(i) =
          w(i) * std::pow(1.0 - x(i), alpha) * std::pow(1.0 + x(i), beta);
    return rule;
  }
  if (half_a != half_b) {
    // one half-integer exponent: the substitution x -> +-(1 - 2u^2) turns the
    // integrand into a polynomial in u on [0,1]
    const bool flip = half_a;  // move the half-integer factor to (1+x)
    const double a = flip ? beta : alpha;
    const double b = flip ? alpha : beta;
    const int u_degree =
        2 * poly_degree + 2 * static_cast<int>(a) + 2 * static_cast<int>(b) + 3;
    const int n = u_degree / 2 + 3;
    Eigen::VectorXd x, w;
    legendre_rule(n, x, w);
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * (x(i) + 1.0);
      const double wu = 0.5 * w(i);
      const double mapped = 2.0 * u * u - 1.0;
      rule.nodes(i) = flip ? -mapped : mapped;
      rule.weights(i) = wu * std::pow(2.0 * (1.0 - u * u), a) *
                        std::pow(2.0 * u * u, b) * 4.0 * u;
    }
    return rule;
  }
  // both exponents half-integer: under x = cos(2v) the full integrand times
  // |dx| becomes an even trig polynomial, so the equispaced full-period rule
  // is exact; the sweep covers [-1,1] four times, hence the 1/4
  const int trig_degree = 2 * poly_degree + 2 * static_cast<int>(alpha + 0.5) +
                          2 * static_cast<int>(beta + 0.5) + 4;
  const int n = trig_degree + 8;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double v = -pi + 2.0 * pi * (i + 0.5) / n;
    const double x = std::cos(2.0 * v);
    rule.nodes(i) = x;
    rule.weights(i) = (pi / n) * std::pow(1.0 - x, alpha + 0.5) *
                      std::pow(1.0 + x, beta + 0.5);
  }
  return rule;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace speclift::testing
