#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "arealaw/core/states.hpp"
#include "arealaw/process/choi.hpp"

namespace arealaw {

struct InstrumentBranch {
  std::string label;
  ChoiMatrix choi;  // CP map input → output
};

/// Collection of CP maps {𝓜_a} that should sum to a CPTP map.
struct Instrument {
  std::size_t input_dim = 2;
  std::size_t output_dim = 2;
  std::vector<InstrumentBranch> branches;

  std::size_t outcomes() const { return branches.size(); }
  /// Σ_a 𝓜_a as a Choi matrix.
  ChoiMatrix total() const;
};

struct BranchCheck {
  std::string label;
  double cp_residual = 0.0;
  bool cp = false;
};

struct InstrumentReport {
  std::vector<BranchCheck> branches;
  double tp_residual = 0.0;
  bool shapes_ok = true;
  bool tp = false;
  std::string message;

  bool valid() const;
};

InstrumentReport validate_instrument(const Instrument& ins);

/// Probability distribution over setting labels, encoded as |p⟩ = Σ_a √p(a)|a⟩.
struct SettingDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  static SettingDistribution uniform(std::size_t count);
  void validate() const;
  std::size_t size() const { return probabilities.size(); }
  Vector setting_state() const;
};

/// Instrument on setting ⊗ system with Kraus operators |s⟩⟨s| ⊗ K^{(s)}_{b,k}.
/// Outcome b is shared across settings; missing branches count as zero maps.
Instrument controlled_instrument(const SettingDistribution& setting, const std::vector<Instrument>& per_setting);

nlohmann::json instrument_to_json(const Instrument& ins);
Instrument instrument_from_json(const nlohmann::json& j);

}  // namespace arealaw
