#include "speclift/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

namespace speclift {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return {};
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(i, c) = j.at(i).at(c).get<double>();
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = j.at(static_cast<size_t>(i)).get<double>();
  return v;
}

std::string metric_kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::CircleArc: return "circle-arc";
    case MetricKind::SphereGeodesic: return "sphere-geodesic";
    case MetricKind::Explicit: return "explicit";
  }
  return "euclidean";
}

}  // namespace

json system_to_json(const SpectralSystem& system) {
  json j;
  j["points"] = matrix_to_json(system.points);
  j["weights"] = vector_to_json(system.weights);
  j["eigenvalues"] = vector_to_json(system.eigenvalues);
  json table = json::array();  // row-major, each entry [re, im]
  for (Eigen::Index i = 0; i < system.eigenfunctions.rows(); ++i)
    for (Eigen::Index k = 0; k < system.eigenfunctions.cols(); ++k)
      table.push_back({system.eigenfunctions(i, k).real(),
                       system.eigenfunctions(i, k).imag()});
  j["eigenfunctions"] = std::move(table);
  if (system.metric.kind == MetricKind::Explicit)
    j["metric"] = {{"table", matrix_to_json(system.metric.table)}};
  else
    j["metric"] = metric_kind_name(system.metric.kind);
  j["provenance"] = provenance_name(system.provenance);
  j["orthonormal"] = system.orthonormal;
  return j;
}

SpectralSystem system_from_json(const json& j) {
  SpectralSystem system;
  system.points = matrix_from_json(j.at("points"));
  system.weights = vector_from_json(j.at("weights"));
  system.eigenvalues = vector_from_json(j.at("eigenvalues"));
  const Eigen::Index n = system.weights.size();
  const Eigen::Index k = system.eigenvalues.size();
  const auto& table = j.at("eigenfunctions");
  if (static_cast<Eigen::Index>(table.size()) != n * k)
    throw ParseError("system_from_json: eigenfunction table size mismatch");
  system.eigenfunctions.resize(n, k);
  Eigen::Index flat = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < k; ++c, ++flat)
      system.eigenfunctions(i, c) = {table.at(flat).at(0).get<double>(),
                                     table.at(flat).at(1).get<double>()};
  const auto& metric = j.at("metric");
  if (metric.is_string()) {
    const std::string name = metric.get<std::string>();
    if (name == "euclidean") system.metric.kind = MetricKind::Euclidean;
    else if (name == "circle-arc") system.metric.kind = MetricKind::CircleArc;
    else if (name == "sphere-geodesic")
      system.metric.kind = MetricKind::SphereGeodesic;
    else throw ParseError("system_from_json: unknown metric: " + name);
  } else {
    system.metric.kind = MetricKind::Explicit;
    system.metric.table = matrix_from_json(metric.at("table"));
  }
  system.provenance = provenance_from_name(j.at("provenance").get<std::string>());
  system.orthonormal = j.value("orthonormal", false);
  return system;
}

json pair_to_json(const DirectedPair& pair) {
  json j;
  j["pair"] = true;
  j["base"] = system_to_json(pair.base);
  j["dual"] = system_to_json(pair.dual);
  j["non_unique_isometry"] = pair.non_unique_isometry;
  return j;
}

DirectedPair pair_from_json(const json& j) {
  DirectedPair pair;
  pair.base = system_from_json(j.at("base"));
  pair.dual = system_from_json(j.at("dual"));
  pair.non_unique_isometry = j.value("non_unique_isometry", false);
  return pair;
}

json connection_to_json(const ConnectionMatrix& a) {
  json entries = json::array();
  for (const auto& e : a.entries)
    entries.push_back({{"j", e.j},
                       {"k", e.k},
                       {"re", e.value.real()},
                       {"im", e.value.imag()},
                       {"ell", e.ell}});
  return json{{"entries", std::move(entries)}, {"rows", a.rows}, {"cols", a.cols}};
}

ConnectionMatrix connection_from_json(const json& j) {
  ConnectionMatrix a;
  a.rows = j.value("rows", 0);
  a.cols = j.value("cols", 0);
  for (const auto& e : j.at("entries")) {
    ConnectionEntry entry;
    entry.j = e.at("j").get<int>();
    entry.k = e.at("k").get<int>();
    entry.value = {e.at("re").get<double>(), e.at("im").get<double>()};
    entry.ell = e.at("ell").get<double>();
    a.entries.push_back(entry);
    a.rows = std::max(a.rows, entry.j + 1);
    a.cols = std::max(a.cols, entry.k + 1);
  }
  return a;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << j.dump();
  if (!out) throw ParseError("write failed: " + path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) {
    // trim surrounding whitespace
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

struct CsvTable {
  std::vector<std::string> header;  // empty when the first row was numeric
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  CsvTable table;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (fields.empty()) continue;
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (size_t i = 0; i < fields.size(); ++i)
      if (!parse_double(fields[i], row[i])) {
        numeric = false;
        break;
      }
    if (!numeric) {
      if (table.rows.empty() && table.header.empty()) {
        table.header = fields;
        continue;
      }
      throw ParseError(path + ":" + std::to_string(line_number) +
                       ": non-numeric field");
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_number);
  }
  return table;
}

}  // namespace

PointCloud read_points_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  int weight_col = -1;
  for (size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == "weight") weight_col = static_cast<int>(c);
  const size_t cols = table.rows.front().size();
  PointCloud cloud;
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  const Eigen::Index dim =
      static_cast<Eigen::Index>(cols) - (weight_col >= 0 ? 1 : 0);
  cloud.points.resize(n, dim);
  if (weight_col >= 0) cloud.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<size_t>(i)];
    if (row.size() != cols)
      throw ParseError(path + ":" +
                       std::to_string(table.line_numbers[static_cast<size_t>(i)]) +
                       ": ragged row");
    Eigen::Index d = 0;
    for (size_t c = 0; c < cols; ++c) {
      if (static_cast<int>(c) == weight_col)
        cloud.weights(i) = row[c];
      else
        cloud.points(i, d++) = row[c];
    }
  }
  return cloud;
}

Eigen::MatrixXcd read_matrix_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  const size_t cols = table.rows.front().size();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(table.rows.size()),
                     static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != cols)
      throw ParseError(path + ":" + std::to_string(table.line_numbers[i]) +
                       ": ragged row");
    for (size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          table.rows[i][j];
  }
  return m;
}

Eigen::MatrixXcd read_edge_list_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  Eigen::Index n = 0;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() < 3)
      throw ParseError(path + ":" + std::to_string(table.line_numbers[i]) +
                       ": edge row needs (src, dst, weight)");
    n = std::max<Eigen::Index>(
        n, static_cast<Eigen::Index>(
               std::max(table.rows[i][0], table.rows[i][1])) +
               1);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& row : table.rows)
    m(static_cast<Eigen::Index>(row[0]), static_cast<Eigen::Index>(row[1])) =
        row[2];
  return m;
}

FunctionSamples read_function_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  FunctionSamples f(static_cast<Eigen::Index>(table.rows.size()));
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.size() == 1)
      f(static_cast<Eigen::Index>(i)) = row[0];
    else if (row.size() == 2)
      f(static_cast<Eigen::Index>(i)) = {row[0], row[1]};
    else
      throw ParseError(path + ":" + std::to_string(table.line_numbers[i]) +
                       ": expected 1 or 2 columns (re[, im])");
  }
  return f;
}

LandmarkSet read_landmarks_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ParseError(path + ": no landmark rows");
  LandmarkSet set;
  set.nu_weights.resize(static_cast<Eigen::Index>(table.rows.size()));
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() < 3)
      throw ParseError(path + ":" + std::to_string(table.line_numbers[i]) +
                       ": expected (index_in_1, index_in_2, nu_weight)");
    set.indices_in_1.push_back(static_cast<Eigen::Index>(table.rows[i][0]));
    set.indices_in_2.push_back(static_cast<Eigen::Index>(table.rows[i][1]));
    set.nu_weights(static_cast<Eigen::Index>(i)) = table.rows[i][2];
  }
  return set;
}

void write_pyramid_csv(const std::vector<FunctionSamples>& levels,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "level,point,re,im\n";
  for (size_t j = 0; j < levels.size(); ++j)
    for (Eigen::Index i = 0; i < levels[j].size(); ++i)
      out << j << ',' << i << ',' << levels[j](i).real() << ','
          << levels[j](i).imag() << '\n';
}

void write_samples_csv(const FunctionSamples& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "re,im\n";
  for (Eigen::Index i = 0; i < samples.size(); ++i)
    out << samples(i).real() << ',' << samples(i).imag() << '\n';
}

}  // namespace speclift
