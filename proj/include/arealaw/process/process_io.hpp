#pragma once

#include <string>

#include "json.hpp"

#include "arealaw/process/process_matrix.hpp"

namespace arealaw {

/// {"dims": [...], "entries": [[re, im], ...]} with row-major entries.
nlohmann::json matrix_to_json(const Matrix& m, const std::vector<std::size_t>& dims);
Matrix matrix_from_json(const nlohmann::json& j, std::vector<std::size_t>* dims = nullptr);

/// dims = [A_I, A_O, B_I, B_O, …].
nlohmann::json process_to_json(const ProcessMatrix& w);
ProcessMatrix process_from_json(const nlohmann::json& j);

nlohmann::json scheme_to_json(const ProbingScheme& scheme);
ProbingScheme scheme_from_json(const nlohmann::json& j);

}  // namespace arealaw
