#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "speclift/coupling.hpp"
#include "speclift/directed_pair.hpp"
#include "speclift/spectral_system.hpp"

namespace speclift {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- serialized systems (JSON) ----
// { "points": [[...],...], "weights": [...], "eigenvalues": [...],
//   "eigenfunctions": row-major [re,im] pairs,
//   "metric": "euclidean" | "circle-arc" | "sphere-geodesic" | {"table": [[..]]},
//   "provenance": "laplacian" | "svd-left" | "svd-right" | "analytic" }

nlohmann::json system_to_json(const SpectralSystem& system);
SpectralSystem system_from_json(const nlohmann::json& j);

nlohmann::json pair_to_json(const DirectedPair& pair);
DirectedPair pair_from_json(const nlohmann::json& j);

// { "entries": [ {"j":..,"k":..,"re":..,"im":..,"ell":..}, ... ] }
nlohmann::json connection_to_json(const ConnectionMatrix& a);
ConnectionMatrix connection_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

// ---- CSV ingestion ----

struct PointCloud {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;  // empty when no weight column present
};

/// One row per point; numeric columns are coordinates. An optional header
/// may name a "weight" column.
PointCloud read_points_csv(const std::string& path);

/// Dense numeric matrix, one row per line.
Eigen::MatrixXcd read_matrix_csv(const std::string& path);

/// Edge list (src, dst, weight), densified to an n x n matrix where n is one
/// past the largest vertex id. A row with fewer than 3 fields is reported
/// with its line number.
Eigen::MatrixXcd read_edge_list_csv(const std::string& path);

/// Function samples: one or two numeric columns (re[, im]).
FunctionSamples read_function_csv(const std::string& path);

/// Landmark rows (index_in_1, index_in_2, nu_weight).
LandmarkSet read_landmarks_csv(const std::string& path);

/// Pyramid export: rows (level j, point index, re, im).
void write_pyramid_csv(const std::vector<FunctionSamples>& levels,
                       const std::string& path);

void write_samples_csv(const FunctionSamples& samples, const std::string& path);

}  // namespace speclift
