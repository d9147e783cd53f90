#include "arealaw/instruments/instrument.hpp"

#include <cmath>
#include <sstream>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/tolerances.hpp"
#include "arealaw/process/process_io.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

ChoiMatrix Instrument::total() const {
  const auto n = idx(input_dim * output_dim);
  ChoiMatrix sum{input_dim, output_dim, Matrix::Zero(n, n)};
  for (const auto& b : branches)
    if (b.choi.in_dim == input_dim && b.choi.out_dim == output_dim) sum.matrix += b.choi.matrix;
  return sum;
}

bool InstrumentReport::valid() const {
  if (!shapes_ok || !tp) return false;
  for (const auto& b : branches)
    if (!b.cp) return false;
  return true;
}

InstrumentReport validate_instrument(const Instrument& ins) {
  InstrumentReport report;
  std::ostringstream msg;
  if (ins.branches.empty()) {
    report.shapes_ok = false;
    msg << "instrument has no branches; ";
  }
  for (const auto& b : ins.branches) {
    BranchCheck check{b.label, 0.0, false};
    if (b.choi.in_dim != ins.input_dim || b.choi.out_dim != ins.output_dim ||
        b.choi.matrix.rows() != idx(b.choi.dim()) || b.choi.matrix.cols() != idx(b.choi.dim())) {
      report.shapes_ok = false;
      msg << "branch '" << b.label << "' has the wrong shape; ";
    } else {
      check.cp_residual = cp_residual(b.choi);
      check.cp = check.cp_residual <= tol::psd;
      if (!check.cp) msg << "branch '" << b.label << "' is not CP (residual " << check.cp_residual << "); ";
    }
    report.branches.push_back(check);
  }
  report.tp_residual = tp_residual(ins.total());
  report.tp = report.tp_residual <= tol::trace * std::sqrt(static_cast<double>(ins.input_dim));
  if (!report.tp) msg << "branches do not sum to a trace-preserving map (residual " << report.tp_residual << ")";
  report.message = msg.str();
  return report;
}

SettingDistribution SettingDistribution::uniform(std::size_t count) {
  SettingDistribution s;
  for (std::size_t k = 0; k < count; ++k) {
    s.labels.push_back(std::to_string(k));
    s.probabilities.push_back(1.0 / static_cast<double>(count));
  }
  return s;
}

void SettingDistribution::validate() const {
  if (probabilities.empty()) throw ValidationError("setting distribution is empty");
  if (!labels.empty() && labels.size() != probabilities.size())
    throw ValidationError("setting labels and probabilities differ in length");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ValidationError("setting probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::trace) throw ValidationError("setting probabilities must sum to 1");
}

Vector SettingDistribution::setting_state() const {
  validate();
  Vector v(idx(probabilities.size()));
  for (std::size_t k = 0; k < probabilities.size(); ++k) v(idx(k)) = std::sqrt(probabilities[k]);
  return v;
}

Instrument controlled_instrument(const SettingDistribution& setting, const std::vector<Instrument>& per_setting) {
  setting.validate();
  if (per_setting.size() != setting.size()) throw ValidationError("one instrument per setting is required");
  const std::size_t din = per_setting.front().input_dim, dout = per_setting.front().output_dim;
  std::size_t outcomes = 0;
  for (const auto& ins : per_setting) {
    if (ins.input_dim != din || ins.output_dim != dout)
      throw DimensionError("per-setting instruments must share input and output spaces");
    outcomes = std::max(outcomes, ins.outcomes());
  }
  const std::size_t ns = setting.size();
  Instrument out;
  out.input_dim = ns * din;
  out.output_dim = ns * dout;
  for (std::size_t b = 0; b < outcomes; ++b) {
    std::vector<Matrix> kraus;
    std::string label = std::to_string(b);
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& ins = per_setting[s];
      if (b >= ins.outcomes()) continue;
      if (s == 0) label = ins.branches[b].label;
      for (const auto& k : kraus_from_choi(ins.branches[b].choi)) {
        Matrix big = Matrix::Zero(idx(ns * dout), idx(ns * din));
        big.block(idx(s * dout), idx(s * din), idx(dout), idx(din)) = k;
        kraus.push_back(std::move(big));
      }
    }
    out.branches.push_back({label, choi_from_kraus(out.input_dim, out.output_dim, kraus)});
  }
  return out;
}

nlohmann::json instrument_to_json(const Instrument& ins) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : ins.branches) {
    auto m = matrix_to_json(b.choi.matrix, {b.choi.in_dim, b.choi.out_dim});
    m["label"] = b.label;
    branches.push_back(std::move(m));
  }
  return {{"kind", "instrument"}, {"input_dim", ins.input_dim}, {"output_dim", ins.output_dim}, {"branches", branches}};
}

Instrument instrument_from_json(const nlohmann::json& j) {
  if (!j.contains("input_dim") || !j.contains("output_dim") || !j.contains("branches"))
    throw ValidationError("instrument needs 'input_dim', 'output_dim' and 'branches'");
  Instrument ins;
  ins.input_dim = j.at("input_dim").get<std::size_t>();
  ins.output_dim = j.at("output_dim").get<std::size_t>();
  std::size_t k = 0;
  for (const auto& b : j.at("branches")) {
    std::vector<std::size_t> dims;
    Matrix m = matrix_from_json(b, &dims);
    if (dims.size() != 2) throw ValidationError("branch 'dims' must be [input, output]");
    std::string label = b.contains("label") ? b.at("label").get<std::string>() : std::to_string(k);
    ins.branches.push_back({label, {dims[0], dims[1], std::move(m)}});
    ++k;
  }
  return ins;
}

}  // namespace arealaw
