#include "arealaw/process/process_io.hpp"

#include "arealaw/core/errors.hpp"

namespace arealaw {

using nlohmann::json;

json matrix_to_json(const Matrix& m, const std::vector<std::size_t>& dims) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"dims", dims}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j, std::vector<std::size_t>* dims_out) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("entries"))
    throw ValidationError("matrix document needs 'dims' and 'entries'");
  std::vector<std::size_t> dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) throw ValidationError("'dims' must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != n * n)
    throw ValidationError("'entries' must hold " + std::to_string(n * n) + " complex numbers");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t k = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ValidationError("each entry must be a [re, im] pair");
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = Complex(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  if (dims_out) *dims_out = std::move(dims);
  return m;
}

json process_to_json(const ProcessMatrix& w) {
  std::vector<std::size_t> dims;
  for (const auto& p : w.parties()) {
    dims.push_back(p.in);
    dims.push_back(p.out);
  }
  json j = matrix_to_json(w.matrix(), dims);
  j["kind"] = "process";
  return j;
}

ProcessMatrix process_from_json(const json& j) {
  std::vector<std::size_t> dims;
  Matrix m = matrix_from_json(j, &dims);
  if (dims.empty() || dims.size() % 2 != 0) throw ValidationError("process 'dims' must list (input, output) per party");
  std::vector<PartyDims> parties;
  for (std::size_t k = 0; k < dims.size(); k += 2) parties.push_back({dims[k], dims[k + 1]});
  return ProcessMatrix(std::move(parties), std::move(m));
}

json scheme_to_json(const ProbingScheme& scheme) {
  json maps = json::array();
  for (std::size_t k = 0; k < scheme.maps.size(); ++k) {
    const auto& m = scheme.maps[k];
    const std::size_t anc = scheme.ancilla_dims[k];
    maps.push_back(matrix_to_json(m.matrix, {m.in_dim, m.out_dim / anc, anc}));
  }
  return json{{"kind", "probing_scheme"}, {"maps", std::move(maps)}};
}

ProbingScheme scheme_from_json(const json& j) {
  if (!j.contains("maps") || !j.at("maps").is_array()) throw ValidationError("probing scheme needs 'maps'");
  ProbingScheme scheme;
  for (const auto& entry : j.at("maps")) {
    std::vector<std::size_t> dims;
    Matrix m = matrix_from_json(entry, &dims);
    if (dims.size() != 3) throw ValidationError("probing map 'dims' must be [in, out, ancilla]");
    scheme.maps.push_back({dims[0], dims[1] * dims[2], std::move(m)});
    scheme.ancilla_dims.push_back(dims[2]);
  }
  return scheme;
}

}  // namespace arealaw
