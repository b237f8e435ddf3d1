#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpmetric/channel.hpp"
#include "cpmetric/error.hpp"
#include "cpmetric/matrix.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric::cli {

/// Malformed input document (bad JSON, wrong shape, unknown role). Exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// {"dims": [rows, cols], "entries": [[re, im], ...], "role": ...}
///
/// Channels use role "choi" with "channel_dims": [n, m] and a Choi matrix of
/// size nm x nm, or a "kraus" array of n x m matrices instead of entries.
struct MatrixFile {
  ComplexMatrix matrix;
  std::optional<std::string> role;
  std::optional<std::pair<std::size_t, std::size_t>> channel_dims;
  std::vector<ComplexMatrix> kraus;
};

ComplexMatrix matrix_from_json(const nlohmann::json& doc);
/// Shortest round-trip formatting, so writing then reading is bit-exact.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

MatrixFile parse_matrix_file(const nlohmann::json& doc);
MatrixFile read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m,
                       const std::optional<std::string>& role = std::nullopt);

/// Role must be absent or "state"; DensityState invariants are re-checked.
DensityState load_state(const std::filesystem::path& path);
/// Role "unitary" or "isometry" is re-validated when present.
ComplexMatrix load_matrix(const std::filesystem::path& path);
/// Role must be "choi"; Kraus lists are converted to a Choi matrix.
QuantumChannel load_channel(const std::filesystem::path& path);

}  // namespace cpmetric::cli
