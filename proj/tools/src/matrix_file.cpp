#include "cpmetric_cli/matrix_file.hpp"

#include <algorithm>
#include <fstream>

#include "cpmetric/linalg.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric::cli {

namespace {

using nlohmann::json;

std::size_t dimension_value(const json& v, const char* what) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    throw InputError(std::string(what) + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::pair<std::size_t, std::size_t> dims_pair(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).size() != 2) {
    throw InputError(std::string("'") + key + "' must be a [rows, cols] pair");
  }
  return {dimension_value(doc.at(key)[0], key), dimension_value(doc.at(key)[1], key)};
}

const char* const kRoles[] = {"state", "unitary", "choi", "isometry"};

}  // namespace

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("matrix document must be an object");
  const auto [rows, cols] = dims_pair(doc, "dims");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) throw InputError("'entries' must be an array");
  const json& e = doc.at("entries");
  if (e.size() != rows * cols) {
    throw InputError("'entries' holds " + std::to_string(e.size()) + " values, dims require " +
                     std::to_string(rows * cols));
  }
  std::vector<cplx> data;
  data.reserve(e.size());
  for (const auto& z : e) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw InputError("each entry must be an [re, im] pair of numbers");
    }
    data.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  try {
    return ComplexMatrix(rows, cols, std::move(data));
  } catch (const Error& err) {
    throw InputError(err.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const cplx& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"dims", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

MatrixFile parse_matrix_file(const json& doc) {
  if (!doc.is_object()) throw InputError("matrix file must hold a JSON object");
  MatrixFile file;
  if (doc.contains("role")) {
    if (!doc.at("role").is_string()) throw InputError("'role' must be a string");
    const std::string role = doc.at("role").get<std::string>();
    if (std::find(std::begin(kRoles), std::end(kRoles), role) == std::end(kRoles)) {
      throw InputError("unknown role '" + role + "'");
    }
    file.role = role;
  }
  if (doc.contains("channel_dims")) file.channel_dims = dims_pair(doc, "channel_dims");
  if (doc.contains("kraus")) {
    if (!doc.at("kraus").is_array() || doc.at("kraus").empty()) throw InputError("'kraus' must be a non-empty array");
    for (const auto& k : doc.at("kraus")) file.kraus.push_back(matrix_from_json(k));
    if (doc.contains("entries")) throw InputError("give either 'entries' or 'kraus', not both");
  } else {
    file.matrix = matrix_from_json(doc);
  }
  return file;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return parse_matrix_file(doc);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m,
                       const std::optional<std::string>& role) {
  json doc = matrix_to_json(m);
  if (role) doc["role"] = *role;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

DensityState load_state(const std::filesystem::path& path) {
  MatrixFile f = read_matrix_file(path);
  if (f.role && *f.role != "state") throw InputError(path.string() + ": expected role 'state'");
  if (!f.kraus.empty()) throw InputError(path.string() + ": a state cannot be given by Kraus operators");
  return DensityState(f.matrix);
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
  MatrixFile f = read_matrix_file(path);
  if (!f.kraus.empty()) throw InputError(path.string() + ": expected a single matrix");
  const double tol = tolerances().residual;
  if (f.role == "unitary") {
    if (!f.matrix.is_square() || unitarity_defect(f.matrix) > tol) {
      throw InvariantError(path.string() + ": matrix tagged 'unitary' is not unitary");
    }
  } else if (f.role == "isometry") {
    const ComplexMatrix g = adjoint_times(f.matrix, f.matrix);
    if (f.matrix.cols() > f.matrix.rows() || max_abs_diff(g, ComplexMatrix::identity(g.rows())) > tol) {
      throw InvariantError(path.string() + ": matrix tagged 'isometry' is not an isometry");
    }
  } else if (f.role == "state") {
    (void)DensityState(f.matrix);
  }
  return f.matrix;
}

QuantumChannel load_channel(const std::filesystem::path& path) {
  MatrixFile f = read_matrix_file(path);
  if (f.role != "choi") throw InputError(path.string() + ": expected role 'choi'");
  if (!f.kraus.empty()) {
    const std::size_t n = f.kraus.front().rows(), m = f.kraus.front().cols();
    for (const auto& k : f.kraus) {
      if (k.rows() != n || k.cols() != m) throw InputError(path.string() + ": Kraus operators differ in shape");
    }
    if (f.channel_dims && *f.channel_dims != std::pair{n, m}) {
      throw InputError(path.string() + ": channel_dims disagree with the Kraus operators");
    }
    return QuantumChannel::from_kraus(n, m, f.kraus);
  }
  if (!f.channel_dims) throw InputError(path.string() + ": a Choi matrix needs 'channel_dims'");
  const auto [n, m] = *f.channel_dims;
  if (f.matrix.rows() != n * m || f.matrix.cols() != n * m) {
    throw InputError(path.string() + ": Choi matrix must be nm x nm for channel_dims [n, m]");
  }
  return QuantumChannel(n, m, f.matrix);
}

}  // namespace cpmetric::cli
