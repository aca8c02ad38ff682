// speclift command-line front end: build spectral systems from point clouds
// or weight matrices, run the dyadic analysis/lift pipelines, and verify the
// library's reference identities. All structured output is JSON; exit codes
// are 0 (pass), 1 (verification failure), 2 (usage/parse), 3 (numeric).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <random>

#include <speclift/approximation.hpp>
#include <speclift/coupling.hpp>
#include <speclift/directed_pair.hpp>
#include <speclift/filters.hpp>
#include <speclift/io.hpp>
#include <speclift/jacobi.hpp>
#include <speclift/spectral_system.hpp>
#include <speclift/tauberian.hpp>
#include <speclift/version.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace speclift;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct JobConfig {
  int filter_order = 4;
  std::string filter_profile = "smoothed-polynomial";
  double epsilon = 1.0;
  int k = 16;
  int levels = 8;
  double p = 2.0;
  double tol = 1e-8;
  unsigned seed = 1;
  int trials = 100;
  int n = 256;               // circle grid size
  int n_theta = 40, n_phi = 24, j_max = 4, m_max = 4;
  std::string out_dir = ".";

  void load(const std::string& path) {
    const json j = load_json(path);
    filter_order = j.value("filter", json::object()).value("order", filter_order);
    filter_profile =
        j.value("filter", json::object()).value("profile", filter_profile);
    epsilon = j.value("epsilon", epsilon);
    k = j.value("k", k);
    levels = j.value("levels", levels);
    if (j.contains("p")) {
      if (j["p"].is_string() && j["p"] == "inf")
        p = std::numeric_limits<double>::infinity();
      else
        p = j["p"].get<double>();
    }
    tol = j.value("tol", tol);
    seed = j.value("seed", seed);
    trials = j.value("trials", trials);
    n = j.value("n", n);
    n_theta = j.value("n_theta", n_theta);
    n_phi = j.value("n_phi", n_phi);
    j_max = j.value("j_max", j_max);
    m_max = j.value("m_max", m_max);
  }

  LowPassFilter filter() const {
    if (filter_profile == "cutoff") return make_cutoff_filter();
    if (filter_profile == "exp-plateau")
      return make_filter(1, FilterProfile::ExpPlateau);
    if (filter_profile == "smoothed-polynomial") return make_filter(filter_order);
    throw std::invalid_argument("unknown filter profile: " + filter_profile);
  }

  json echo() const {
    return json{{"filter", {{"order", filter_order}, {"profile", filter_profile}}},
                {"epsilon", epsilon},
                {"k", k},
                {"levels", levels},
                {"p", std::isinf(p) ? json("inf") : json(p)},
                {"tol", tol},
                {"seed", seed},
                {"trials", trials},
                {"n", n}};
  }
};

json report_header(const JobConfig& config) {
  return json{{"library_version", kVersionString}, {"config", config.echo()}};
}

void write_report(const json& report, const std::string& path) {
  save_json(report, path);
  std::cout << "wrote " << path << "\n";
}

double parse_p(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(text);
}

// ---- build ----

int cmd_build(const JobConfig& config, const std::string& points_path,
              const std::string& matrix_path, const std::string& edges_path,
              const std::string& builtin, bool normalized) {
  fs::create_directories(config.out_dir);
  const fs::path out(config.out_dir);

  auto summarize = [](const SpectralSystem& system, const std::string& label) {
    std::cout << label << ": N=" << system.size() << " K=" << system.modes()
              << " lambda in [" << system.eigenvalues(0) << ", "
              << system.max_eigenvalue()
              << "] orthonormality residual=" << orthonormality_residual(system)
              << "\n";
  };

  if (!builtin.empty()) {
    if (builtin == "circle") {
      const SpectralSystem circle = build_circle_system(config.n, config.k);
      const std::string path = (out / "circle_system.json").string();
      save_json(system_to_json(circle), path);
      summarize(circle, "circle");
      std::cout << "wrote " << path << "\n";
      return kExitPass;
    }
    if (builtin == "jacobi-pair") {
      const HemisphereDiscPair pair = build_hemisphere_disc_pair(
          config.n_theta, config.n_phi, config.j_max, config.m_max);
      json j;
      j["jacobi_pair"] = true;
      j["hemisphere"] = system_to_json(pair.hemisphere);
      j["disc"] = system_to_json(pair.disc);
      j["connection"] = connection_to_json(pair.connection);
      j["synthesis_connection"] = connection_to_json(pair.synthesis_connection);
      const std::string path = (out / "jacobi_pair.json").string();
      save_json(j, path);
      summarize(pair.hemisphere, "hemisphere");
      summarize(pair.disc, "disc");
      std::cout << "wrote " << path << "\n";
      return kExitPass;
    }
    throw CLI::ValidationError("--builtin must be circle or jacobi-pair");
  }

  if (!points_path.empty()) {
    const PointCloud cloud = read_points_csv(points_path);
    SpectralSystem system =
        build_undirected_system(cloud.points, config.epsilon, config.k, normalized);
    if (cloud.weights.size() > 0) {
      // re-expressing the measure keeps the stored vectors; downstream inner
      // products pick the weights up from here
      system.weights = cloud.weights;
      system.orthonormal = orthonormality_residual(system) < 1e-8;
    }
    const std::string path = (out / "system.json").string();
    save_json(system_to_json(system), path);
    summarize(system, "system");
    std::cout << "wrote " << path << "\n";
    return kExitPass;
  }

  Eigen::MatrixXcd w;
  if (!matrix_path.empty()) {
    w = read_matrix_csv(matrix_path);
  } else if (!edges_path.empty()) {
    w = read_edge_list_csv(edges_path);
  } else {
    throw CLI::ValidationError(
        "build needs --points, --matrix, --edge-list, or --builtin");
  }
  if (w.rows() != w.cols()) throw ParseError("weight matrix must be square");
  const int modes = std::min<int>(config.k, static_cast<int>(w.rows()));
  DirectedPair pair = build_directed_pair(w, modes);
  const bool undirected =
      (w - w.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + w.cwiseAbs().maxCoeff());
  json j = pair_to_json(pair);
  if (undirected) j["undirected_degenerate"] = true;
  const std::string path = (out / "pair.json").string();
  save_json(j, path);
  summarize(pair.base, undirected ? "pair (undirected degenerate)" : "pair");
  std::cout << "wrote " << path << "\n";
  return kExitPass;
}

// ---- analyze ----

int cmd_analyze(const JobConfig& config, const std::string& system_path,
                const std::string& function_path) {
  fs::create_directories(config.out_dir);
  const fs::path out(config.out_dir);
  const json stored = load_json(system_path);

  DirectedPair pair;
  bool is_pair = stored.value("pair", false);
  if (is_pair) {
    pair = pair_from_json(stored);
  } else {
    pair = identity_pair(system_from_json(stored));
  }
  const FunctionSamples f = read_function_csv(function_path);
  if (f.size() != pair.size())
    throw ParseError("function length " + std::to_string(f.size()) +
                     " != system size " + std::to_string(pair.size()));

  const LowPassFilter h = config.filter();
  const auto pyramid = tau_pyramid(pair, h, config.levels, f);
  write_pyramid_csv(pyramid, (out / "pyramid.csv").string());

  DecaySequence norms;
  for (const auto& tau : pyramid)
    norms.entries.push_back(lp_norm(pair.base, tau, config.p));

  json report = report_header(config);
  report["per_level_norms"] = norms.entries;
  report["p"] = std::isinf(config.p) ? json("inf") : json(config.p);
  report["surrogate"] = true;
  try {
    const SmoothnessReport smoothness = classify_smoothness(norms, config.p);
    report["gamma_hat"] = smoothness.gamma_hat;
    report["residual"] = smoothness.fit_residual;
    report["levels_used"] = smoothness.levels_used;
    report["band_limited"] = smoothness.band_limited;
    report["status"] = "ok";
  } catch (const InsufficientLevelsError& e) {
    report["status"] = e.what();
  }
  if (is_pair) {
    const FrameCheck frame = frame_check(pair, h, f);
    report["frame"] = {{"sum_sq", frame.sum_sq},
                       {"energy", frame.energy},
                       {"lower_ok", frame.lower_ok},
                       {"upper_ok", frame.upper_ok}};
  }
  write_report(report, (out / "smoothness.json").string());
  return kExitPass;
}

// ---- lift ----

int cmd_lift(const JobConfig& config, const std::string& sys1_path,
             const std::string& sys2_path, const std::string& landmarks_path,
             const std::string& connection_path, const std::string& function_path) {
  fs::create_directories(config.out_dir);
  const fs::path out(config.out_dir);
  const SpectralSystem sys1 = system_from_json(load_json(sys1_path));
  const SpectralSystem sys2 = system_from_json(load_json(sys2_path));
  const FunctionSamples f = read_function_csv(function_path);
  if (f.size() != sys2.size())
    throw ParseError("function length != system-2 size");

  ConnectionMatrix connection;
  if (!connection_path.empty()) {
    connection = connection_from_json(load_json(connection_path));
  } else if (!landmarks_path.empty()) {
    const LandmarkSet landmarks = read_landmarks_csv(landmarks_path);
    connection = landmark_connection(sys1, sys2, landmarks);
  } else {
    throw CLI::ValidationError("lift needs --landmarks or --connection");
  }

  LiftOptions options;
  options.max_level = config.levels;
  options.tol = config.tol;
  options.p = config.p;
  const LiftResult result =
      joint_lift(sys1, sys2, connection, config.filter(), f, options);

  write_samples_csv(result.lift, (out / "lift.csv").string());
  json report = report_header(config);
  report["level_increments"] = result.level_increments.entries;
  report["converged"] = result.converged;
  report["beta_hat"] = result.beta_hat;
  report["sufficient_partial_sums"] = result.sufficient_partial_sums;
  report["band_limit_factor"] = band_limit_factor(sys1, connection);
  write_report(report, (out / "lift_report.json").string());
  return kExitPass;  // non-convergence is a diagnostic outcome, not an error
}

// ---- verify ----

json verify_jacobi_target(const JobConfig& config, bool& pass) {
  double worst_ultra = 0.0;
  for (double alpha : {0.0, 1.0, 2.0, 3.0})
    for (int j = 0; j <= 20; ++j)
      for (int s = 0; s < 50; ++s)
        worst_ultra = std::max(
            worst_ultra,
            verify_jacobi_ultra(alpha, j, std::numbers::pi / 2.0 * s / 49.0)
                .abs_diff);

  const HemisphereDiscPair pair = build_hemisphere_disc_pair(
      config.n_theta, config.n_phi, config.j_max, config.m_max);
  double worst_synthesis = 0.0;
  for (Eigen::Index c = 0; c < pair.hemisphere.modes(); ++c) {
    Eigen::VectorXcd synthesized = Eigen::VectorXcd::Zero(pair.hemisphere.size());
    for (const auto& e : pair.synthesis_connection.entries)
      if (e.j == static_cast<int>(c))
        synthesized += e.value * pair.disc.eigenfunctions.col(e.k);
    worst_synthesis = std::max(worst_synthesis,
                               (synthesized - pair.hemisphere.eigenfunctions.col(c))
                                   .cwiseAbs()
                                   .maxCoeff());
  }
  pass = worst_ultra < 1e-10 && worst_synthesis < 1e-8;
  return json{{"quadratic_identity_max_diff", worst_ultra},
              {"quadratic_identity_tol", 1e-10},
              {"synthesis_max_residual", worst_synthesis},
              {"synthesis_tol", 1e-8}};
}

json verify_frame_target(const JobConfig& config, bool& pass) {
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss;
  const LowPassFilter h = config.filter();
  int violations = 0;
  for (int trial = 0; trial < config.trials; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 29);
    Eigen::MatrixXcd w(n, n);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = gauss(rng);
    const DirectedPair pair = build_directed_pair(w, n);
    for (int rep = 0; rep < 5; ++rep) {
      FunctionSamples f(n);
      for (Eigen::Index i = 0; i < n; ++i) f(i) = {gauss(rng), gauss(rng)};
      const FrameCheck check = frame_check(pair, h, f);
      if (!check.lower_ok || !check.upper_ok) ++violations;
    }
  }
  pass = violations == 0;
  return json{{"violations", violations},
              {"trials", config.trials * 5},
              {"upper_constant", 5.0}};
}

json verify_localization_target(const JobConfig& config, bool& pass) {
  const SpectralSystem circle = build_circle_system(512, 128);
  const ConnectionMatrix ident = identity_connection(circle);
  Eigen::Index partner = 1;
  for (Eigen::Index j = 1; j < circle.size(); ++j)
    if (std::fabs(circle.distance(0, j) - 0.5) <
        std::fabs(circle.distance(0, partner) - 0.5))
      partner = j;
  const double r = circle.distance(0, partner);
  const DiscreteMeasure mu = measure_from_pair(circle, circle, ident, 0, partner);
  std::vector<double> n_grid;
  for (int i = 0; i <= 24; ++i)
    n_grid.push_back(4.0 / r * std::pow(16.0, i / 24.0));
  const LocalizationReport rep = verify_localization(
      mu, config.filter(), 1.0, config.filter_order, r, n_grid);
  const double target = 1.0 - config.filter_order;
  const double tolerance = 0.75;
  pass = rep.status == "ok" && std::fabs(rep.slope_hat - target) <= tolerance;
  return json{{"slope_hat", rep.slope_hat},
              {"target", target},
              {"tolerance", tolerance},
              {"empirical_c", rep.empirical_c},
              {"points_used", rep.points_used},
              {"status", rep.status},
              {"r", r}};
}

json verify_gaussian_target(const JobConfig& config, bool& pass) {
  const SpectralSystem circle = build_circle_system(config.n, config.k);
  // stay above the truncation floor and below the constant-mode ceiling
  const double lam_max = circle.max_eigenvalue();
  const double t_lo = std::max(0.002, 4.0 / (lam_max * lam_max));
  const double t_hi = std::min(0.25, std::max(0.1, 10.0 * t_lo));
  std::vector<double> t_grid;
  for (double t = t_lo; t <= t_hi; t *= 1.6) t_grid.push_back(t);
  const GaussianBoundFit fit = estimate_gaussian_bound(circle, t_grid);
  const double tolerance = 0.3;
  pass = std::fabs(fit.q_hat - 1.0) <= tolerance;
  return json{{"q_hat", fit.q_hat},
              {"expected", 1.0},
              {"tolerance", tolerance},
              {"c1_hat", fit.c1_hat},
              {"c2_hat", fit.c2_hat},
              {"max_violation", fit.max_violation}};
}

int cmd_verify(const JobConfig& config, const std::string& target) {
  bool pass = false;
  json details;
  if (target == "jacobi") {
    details = verify_jacobi_target(config, pass);
  } else if (target == "frame") {
    details = verify_frame_target(config, pass);
  } else if (target == "localization") {
    details = verify_localization_target(config, pass);
  } else if (target == "gaussian") {
    details = verify_gaussian_target(config, pass);
  } else {
    std::cerr << "unknown verify target: " << target << "\n";
    return kExitUsage;
  }
  json report = report_header(config);
  report["target"] = target;
  report["pass"] = pass;
  report["details"] = details;
  fs::create_directories(config.out_dir);
  write_report(report, (fs::path(config.out_dir) / ("verify_" + target + ".json"))
                           .string());
  std::cout << (pass ? "PASS" : "FAIL") << " " << target << "\n";
  return pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral filtering, dyadic analysis and landmark lifting"};
  app.require_subcommand(1);

  JobConfig config;
  std::string config_path;
  // the config file is applied before flag parsing so flags override it
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  if (!config_path.empty()) {
    try {
      config.load(config_path);
    } catch (const std::exception& e) {
      std::cerr << "config: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  std::string config_path_sink;

  // shared flags (override config-file values)
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path_sink, "JSON config file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--filter-order", config.filter_order, "filter smoothness order");
    cmd->add_option("--profile", config.filter_profile,
                    "smoothed-polynomial | exp-plateau | cutoff");
    cmd->add_option("--levels", config.levels, "dyadic depth J");
    cmd->add_option("--tol", config.tol, "tolerance");
    cmd->add_option("--seed", config.seed, "RNG seed for randomized trials");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option_function<std::string>(
        "--p", [&](const std::string& v) { config.p = parse_p(v); },
        "norm index: 1, 2, ... or inf");
  };

  auto* build = app.add_subcommand("build", "construct and serialize a system");
  std::string points_path, matrix_path, edges_path, builtin;
  bool normalized = false;
  build->add_option("--points", points_path, "point cloud CSV")
      ->check(CLI::ExistingFile);
  build->add_option("--matrix", matrix_path, "dense weight matrix CSV")
      ->check(CLI::ExistingFile);
  build->add_option("--edge-list", edges_path, "edge list CSV (src,dst,weight)")
      ->check(CLI::ExistingFile);
  build->add_option("--builtin", builtin, "circle | jacobi-pair");
  build->add_option("--epsilon", config.epsilon, "Gaussian kernel variance");
  build->add_option("--k", config.k, "stored mode count / max frequency");
  build->add_option("--n", config.n, "builtin circle grid size");
  build->add_option("--n-theta", config.n_theta, "jacobi-pair theta nodes");
  build->add_option("--n-phi", config.n_phi, "jacobi-pair phi nodes");
  build->add_option("--j-max", config.j_max, "jacobi-pair radial truncation");
  build->add_option("--m-max", config.m_max, "jacobi-pair angular truncation");
  build->add_flag("--normalized", normalized, "row-sum-normalized Laplacian");
  add_common(build);

  auto* analyze =
      app.add_subcommand("analyze", "dyadic pyramid and smoothness report");
  std::string system_path, function_path;
  analyze->add_option("--system", system_path, "system or pair JSON")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--function", function_path, "function samples CSV")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(analyze);

  auto* lift = app.add_subcommand("lift", "lift a function between two systems");
  std::string sys1_path, sys2_path, landmarks_path, connection_path;
  lift->add_option("--sys1", sys1_path, "target system JSON")
      ->required()
      ->check(CLI::ExistingFile);
  lift->add_option("--sys2", sys2_path, "source system JSON")
      ->required()
      ->check(CLI::ExistingFile);
  lift->add_option("--landmarks", landmarks_path, "landmark CSV")
      ->check(CLI::ExistingFile);
  lift->add_option("--connection", connection_path, "connection JSON")
      ->check(CLI::ExistingFile);
  lift->add_option("--function", function_path, "function samples CSV on sys2")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(lift);

  auto* verify = app.add_subcommand("verify", "run a verification target");
  std::string target;
  verify->add_option("target", target, "localization | frame | jacobi | gaussian")
      ->required();
  verify->add_option("--trials", config.trials, "randomized trial count");
  verify->add_option("--builtin", builtin, "reference system (circle)");
  verify->add_option("--n", config.n, "reference grid size");
  verify->add_option("--k", config.k, "reference mode count");
  add_common(verify);

  try {
    app.parse(argc, argv);
    if (build->parsed())
      return cmd_build(config, points_path, matrix_path, edges_path, builtin,
                       normalized);
    if (analyze->parsed()) return cmd_analyze(config, system_path, function_path);
    if (lift->parsed())
      return cmd_lift(config, sys1_path, sys2_path, landmarks_path,
                      connection_path, function_path);
    if (verify->parsed()) return cmd_verify(config, target);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
