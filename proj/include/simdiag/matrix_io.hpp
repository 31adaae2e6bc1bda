#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "simdiag/matrix.hpp"
#include "simdiag/spectrum.hpp"

namespace simdiag {

// Matrix object:
//   {"n": 2, "field": "real", "precision_bits": 128,
//    "entries": [[["1", "0"], ["0.5", "0"]], [["-2", "0"], ["3", "0"]]]}
// Entries are [re, im] decimal strings written with enough digits to read back
// bit-exactly at the declared precision.
nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// Spectrum object: {"n": 2, "precision_bits": 128, "values": [["1", "0"], ["3", "0"]]}.
// A matrix object is also accepted when reading; its diagonal is used.
nlohmann::json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// Pencil file: JSON array of matrix objects of equal n.
nlohmann::json pencil_to_json(const std::vector<Matrix>& pencil);
std::vector<Matrix> pencil_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

}  // namespace simdiag
