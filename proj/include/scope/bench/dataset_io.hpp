#pragma once

#include "scope/datagen.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>

namespace scope::bench {

// Text matrix container:
//
//   %scope-matrix 1
//   rows <R>
//   cols <C>
//   dtype float64
//   <R lines of C whitespace-separated values, row-major>
//
// Values are written with 17 significant digits so a save/load round trip is exact.
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);
void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

/// Sidecar: {"p", "s_true", "support", "signal_values", "signal_magnitude", "seed"}.
nlohmann::json truth_to_json(const TruthSpec& truth);
TruthSpec truth_from_json(const nlohmann::json& doc);

}  // namespace scope::bench
