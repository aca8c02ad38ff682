#include "speclift/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace speclift {

namespace {

long double log_weight_mass(long double a, long double b) {
  // integral of (1-x)^a (1+x)^b over [-1,1] = 2^{a+b+1} B(a+1, b+1)
  return (a + b + 1.0L) * std::log(2.0L) + std::lgammal(a + 1.0L) +
         std::lgammal(b + 1.0L) - std::lgammal(a + b + 2.0L);
}

}  // namespace

JacobiBasis::JacobiBasis(double alpha, double beta, int max_degree)
    : alpha_(alpha), beta_(beta), max_degree_(max_degree) {
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("JacobiBasis: parameters must be > -1");
  if (max_degree < 0)
    throw std::invalid_argument("JacobiBasis: max_degree must be >= 0");
  const long double a = alpha, b = beta;
  inv_sqrt_mass_ = std::exp(-0.5L * log_weight_mass(a, b));
  recur_a_.resize(static_cast<size_t>(max_degree) + 1);
  recur_sb_.resize(static_cast<size_t>(max_degree) + 1);
  for (int k = 0; k <= max_degree; ++k) {
    const long double kk = k;
    const long double s = 2.0L * kk + a + b;
    recur_a_[static_cast<size_t>(k)] =
        (k == 0) ? (b - a) / (a + b + 2.0L)
                 : (b * b - a * a) / (s * (s + 2.0L));
    long double bk;
    if (k == 0) {
      bk = 0.0L;  // unused
    } else if (k == 1) {
      // the (k+a+b)/(2k+a+b-1) factor cancels at k = 1
      bk = 4.0L * (1.0L + a) * (1.0L + b) /
           ((2.0L + a + b) * (2.0L + a + b) * (3.0L + a + b));
    } else {
      bk = 4.0L * kk * (kk + a) * (kk + b) * (kk + a + b) /
           (s * s * (s + 1.0L) * (s - 1.0L));
    }
    recur_sb_[static_cast<size_t>(k)] = std::sqrt(bk);
  }
}

long double JacobiBasis::eval_extended(int k, long double x) const {
  if (k < 0 || k > max_degree_)
    throw std::invalid_argument("JacobiBasis::eval: degree out of range");
  if (x < -1.0L || x > 1.0L)
    throw std::invalid_argument("JacobiBasis::eval: x outside [-1,1]");
  long double prev = 0.0L;
  long double cur = inv_sqrt_mass_;
  for (int i = 0; i < k; ++i) {
    const long double next =
        ((x - recur_a_[static_cast<size_t>(i)]) * cur -
         recur_sb_[static_cast<size_t>(i)] * prev) /
        recur_sb_[static_cast<size_t>(i) + 1];
    prev = cur;
    cur = next;
  }
  return cur;
}

double JacobiBasis::eval(int k, double x) const {
  return static_cast<double>(eval_extended(k, x));
}

Eigen::VectorXd JacobiBasis::eval_all(double x) const {
  if (x < -1.0 || x > 1.0)
    throw std::invalid_argument("JacobiBasis::eval_all: x outside [-1,1]");
  Eigen::VectorXd out(max_degree_ + 1);
  long double prev = 0.0L;
  long double cur = inv_sqrt_mass_;
  out(0) = static_cast<double>(cur);
  const long double lx = x;
  for (int i = 0; i < max_degree_; ++i) {
    const long double next =
        ((lx - recur_a_[static_cast<size_t>(i)]) * cur -
         recur_sb_[static_cast<size_t>(i)] * prev) /
        recur_sb_[static_cast<size_t>(i) + 1];
    prev = cur;
    cur = next;
    out(i + 1) = static_cast<double>(cur);
  }
  return out;
}

double jacobi_eval(const JacobiBasis& basis, int k, double x) {
  return basis.eval(k, x);
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::MatrixXd jacobi_matrix = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double kk = k;
    const double off = kk / std::sqrt(4.0 * kk * kk - 1.0);
    jacobi_matrix(k - 1, k) = off;
    jacobi_matrix(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi_matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_legendre: eigensolver failed");
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double first = solver.eigenvectors()(0, i);
    rule.weights(i) = 2.0 * first * first;
  }
  return rule;
}

double connection_coeff(int m, int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("connection_coeff: j,k >= 0");
  if (k > j)
    throw std::invalid_argument("connection_coeff: requires 0 <= k <= j");
  const int am = std::abs(m);
  const JacobiBasis left(am, 0.5, j);
  const JacobiBasis right(am, 1.0, k);
  const int degree = j + k + am + 1;
  const QuadratureRule rule = gauss_legendre(degree / 2 + 6);
  long double acc = 0.0L;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes(i);
    acc += static_cast<long double>(rule.weights(i)) * left.eval(j, x) *
           right.eval(k, x) * std::pow(1.0 - x, am) * (1.0 + x);
  }
  return static_cast<double>(acc);
}

UltraIdentityCheck verify_jacobi_ultra(double alpha, int j, double theta) {
  if (alpha <= -1.0)
    throw std::invalid_argument("verify_jacobi_ultra: alpha must be > -1");
  if (theta < 0.0 || theta > std::numbers::pi / 2.0 + 1e-12)
    throw std::invalid_argument("verify_jacobi_ultra: theta outside [0, pi/2]");
  const JacobiBasis sym(alpha, alpha, 2 * j + 1);
  const JacobiBasis half(alpha, 0.5, j);
  // both sides and their difference carry extended precision so the reported
  // residual reflects the identity, not double rounding of large values
  const long double lt = theta;
  const long double cos_t = std::cos(lt);
  const long double lhs = sym.eval_extended(2 * j + 1, cos_t);
  const long double rhs = std::pow(2.0L, 0.5L * static_cast<long double>(alpha) +
                                             0.75L) *
                          cos_t * half.eval_extended(j, std::cos(2.0L * lt));
  UltraIdentityCheck out;
  out.lhs = static_cast<double>(lhs);
  out.rhs = static_cast<double>(rhs);
  out.abs_diff = static_cast<double>(std::fabs(lhs - rhs));
  return out;
}

namespace {

struct ModeTable {
  std::vector<std::pair<int, int>> modes;  // (j,l) or (k,m) per column
  Eigen::VectorXd eigenvalues;
};

// sort modes ascending by eigenvalue, ties by index pair
ModeTable sorted_modes(std::vector<std::pair<int, int>> modes,
                       const std::vector<double>& lambdas) {
  std::vector<size_t> order(modes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (lambdas[a] != lambdas[b]) return lambdas[a] < lambdas[b];
    return modes[a] < modes[b];
  });
  ModeTable table;
  table.modes.reserve(modes.size());
  table.eigenvalues.resize(static_cast<Eigen::Index>(modes.size()));
  for (size_t i = 0; i < order.size(); ++i) {
    table.modes.push_back(modes[order[i]]);
    table.eigenvalues(static_cast<Eigen::Index>(i)) = lambdas[order[i]];
  }
  return table;
}

}  // namespace

HemisphereDiscPair build_hemisphere_disc_pair(int n_theta, int n_phi, int j_max,
                                              int m_max) {
  if (j_max < 1 || m_max < 0)
    throw std::invalid_argument("build_hemisphere_disc_pair: bad truncation");
  if (n_theta <= 2 * j_max + m_max + 2 || n_phi <= 2 * m_max)
    throw std::invalid_argument(
        "build_hemisphere_disc_pair: grid too coarse for the truncation");

  const double pi = std::numbers::pi;
  const QuadratureRule gl = gauss_legendre(n_theta);
  // x = cos(theta) on [0,1]; the hemisphere probability measure is
  // (1/2pi) dx dphi in these coordinates, the disc area measure is x dx dphi
  Eigen::VectorXd x01(n_theta), w01(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    x01(i) = 0.5 * (gl.nodes(i) + 1.0);
    w01(i) = 0.5 * gl.weights(i);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(n_theta) * n_phi;
  HemisphereDiscPair pair;
  pair.n_theta = n_theta;
  pair.n_phi = n_phi;
  pair.j_max = j_max;
  pair.m_max = m_max;

  SpectralSystem& hemi = pair.hemisphere;
  SpectralSystem& disc = pair.disc;
  hemi.points.resize(n, 3);
  disc.points.resize(n, 2);
  hemi.weights.resize(n);
  disc.weights.resize(n);
  Eigen::VectorXd theta_of(n), phi_of(n);
  for (int it = 0; it < n_theta; ++it) {
    const double x = x01(it);
    const double theta = std::acos(x);
    const double sin_theta = std::sin(theta);
    for (int is = 0; is < n_phi; ++is) {
      const double phi = -pi + 2.0 * pi * (is + 1) / n_phi;  // (-pi, pi]
      const Eigen::Index g = static_cast<Eigen::Index>(it) * n_phi + is;
      theta_of(g) = theta;
      phi_of(g) = phi;
      hemi.points.row(g) << sin_theta * std::cos(phi),
          sin_theta * std::sin(phi), x;
      disc.points.row(g) << sin_theta * std::cos(phi), sin_theta * std::sin(phi);
      hemi.weights(g) = w01(it) / n_phi;
      disc.weights(g) = w01(it) * x * (2.0 * pi / n_phi);
    }
  }
  hemi.metric.kind = MetricKind::SphereGeodesic;
  disc.metric.kind = MetricKind::Euclidean;
  hemi.provenance = Provenance::Analytic;
  disc.provenance = Provenance::Analytic;

  // mode tables
  std::vector<std::pair<int, int>> modes1, modes2;
  std::vector<double> lam1, lam2;
  for (int j = 0; j <= j_max; ++j)
    for (int l = -m_max; l <= m_max; ++l) {
      modes1.push_back({j, l});
      // Dirichlet frequency of the degree-(2j+|l|+1) harmonic
      const double degree = 2 * j + std::abs(l) + 1;
      lam1.push_back(std::sqrt(degree * (degree + 1.0)));
      modes2.push_back({j, l});  // same index ranges: k = j slot, m = l slot
      lam2.push_back(j * std::abs(l) + j + std::abs(l));
    }
  const ModeTable table1 = sorted_modes(modes1, lam1);
  const ModeTable table2 = sorted_modes(modes2, lam2);
  pair.hemisphere_modes = table1.modes;
  pair.disc_modes = table2.modes;
  hemi.eigenvalues = table1.eigenvalues;
  disc.eigenvalues = table2.eigenvalues;

  const Eigen::Index k1 = static_cast<Eigen::Index>(table1.modes.size());
  const Eigen::Index k2 = static_cast<Eigen::Index>(table2.modes.size());
  hemi.eigenfunctions.resize(n, k1);
  disc.eigenfunctions.resize(n, k2);

  // per-|l| radial tables over the theta nodes
  std::vector<JacobiBasis> sym_basis, disc_basis;
  sym_basis.reserve(m_max + 1);
  disc_basis.reserve(m_max + 1);
  for (int l = 0; l <= m_max; ++l) {
    sym_basis.emplace_back(l, l, 2 * j_max + 1);
    disc_basis.emplace_back(l, 1.0, j_max);
  }

  const std::complex<double> imag_unit(0.0, 1.0);
  for (Eigen::Index c = 0; c < k1; ++c) {
    const auto [j, l] = table1.modes[static_cast<size_t>(c)];
    const int al = std::abs(l);
    for (Eigen::Index g = 0; g < n; ++g) {
      const double th = theta_of(g);
      const double radial = std::sqrt(2.0) * std::pow(std::sin(th), al) *
                            sym_basis[al].eval(2 * j + 1, std::cos(th));
      hemi.eigenfunctions(g, c) =
          radial * std::exp(imag_unit * (static_cast<double>(l) * phi_of(g)));
    }
  }
  for (Eigen::Index c = 0; c < k2; ++c) {
    const auto [k, m] = table2.modes[static_cast<size_t>(c)];
    const int am = std::abs(m);
    const double scale = std::sqrt(std::pow(2.0, am + 2) / pi);
    for (Eigen::Index g = 0; g < n; ++g) {
      const double th = theta_of(g);
      const double radial = scale * std::pow(std::sin(th), am) * std::cos(th) *
                            disc_basis[am].eval(k, std::cos(2.0 * th));
      disc.eigenfunctions(g, c) =
          radial * std::exp(imag_unit * (static_cast<double>(m) * phi_of(g)));
    }
  }

  pair.hemisphere_residual = orthonormality_residual(hemi);
  pair.disc_residual = orthonormality_residual(disc);
  if (pair.hemisphere_residual > 1e-6 || pair.disc_residual > 1e-6)
    throw std::runtime_error(
        "build_hemisphere_disc_pair: orthonormality validation failed, "
        "residuals " +
        std::to_string(pair.hemisphere_residual) + " / " +
        std::to_string(pair.disc_residual) + " (grid too coarse)");
  hemi.orthonormal = true;
  disc.orthonormal = true;

  pair.landmarks = full_landmarks(hemi, disc);
  pair.connection =
      landmark_connection(hemi, disc, pair.landmarks, JointEigenvaluePolicy::Row);

  // synthesis coupling: phi1_{(j,l)} = sqrt(pi) 2^{1/4} sum_{k<=j} a_{j,k}^{(l)}
  // phi2_{(k,l)} pointwise; entries indexed against the sorted columns
  std::vector<std::vector<Eigen::Index>> disc_col(
      static_cast<size_t>(j_max) + 1,
      std::vector<Eigen::Index>(static_cast<size_t>(2 * m_max) + 1, -1));
  for (Eigen::Index c = 0; c < k2; ++c) {
    const auto [k, m] = table2.modes[static_cast<size_t>(c)];
    disc_col[static_cast<size_t>(k)][static_cast<size_t>(m + m_max)] = c;
  }
  pair.synthesis_connection.rows = static_cast<int>(k1);
  pair.synthesis_connection.cols = static_cast<int>(k2);
  const double synthesis_scale = std::sqrt(pi) * std::pow(2.0, 0.25);
  for (Eigen::Index c = 0; c < k1; ++c) {
    const auto [j, l] = table1.modes[static_cast<size_t>(c)];
    for (int k = 0; k <= j; ++k) {
      const Eigen::Index col =
          disc_col[static_cast<size_t>(k)][static_cast<size_t>(l + m_max)];
      pair.synthesis_connection.entries.push_back(
          {static_cast<int>(c), static_cast<int>(col),
           {synthesis_scale * connection_coeff(l, j, k), 0.0},
           hemi.eigenvalues(c)});
    }
  }

  pair.cross_distance.kind = JointDistance::Kind::SharedGridSystem1;
  return pair;
}

SpectralSystem build_circle_system(int n_points, int max_frequency) {
  if (max_frequency < 1)
    throw std::invalid_argument("build_circle_system: need K >= 1");
  if (n_points < 2 * max_frequency + 1)
    throw std::invalid_argument(
        "build_circle_system: need N >= 2K+1 for exact discrete orthonormality");
  const double pi = std::numbers::pi;
  const Eigen::Index n = n_points;
  const Eigen::Index modes = 2 * static_cast<Eigen::Index>(max_frequency) + 1;

  SpectralSystem system;
  system.points.resize(n, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    system.points(i, 0) = 2.0 * pi * static_cast<double>(i) / n_points;
  system.weights = Eigen::VectorXd::Constant(n, 2.0 * pi / n_points);
  system.metric.kind = MetricKind::CircleArc;
  system.provenance = Provenance::Analytic;
  system.eigenvalues.resize(modes);
  system.eigenfunctions.resize(n, modes);

  const double c0 = 1.0 / std::sqrt(2.0 * pi);
  const double ck = 1.0 / std::sqrt(pi);
  system.eigenvalues(0) = 0.0;
  system.eigenfunctions.col(0).setConstant(c0);
  for (int k = 1; k <= max_frequency; ++k) {
    system.eigenvalues(2 * k - 1) = k;
    system.eigenvalues(2 * k) = k;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double angle = k * system.points(i, 0);
      system.eigenfunctions(i, 2 * k - 1) = ck * std::cos(angle);
      system.eigenfunctions(i, 2 * k) = ck * std::sin(angle);
    }
  }
  system.orthonormal = true;
  return system;
}

}  // namespace speclift
