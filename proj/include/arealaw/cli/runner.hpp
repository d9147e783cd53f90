#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>

#include "json.hpp"

#include "arealaw/cli/config.hpp"
#include "arealaw/cli/csv.hpp"
#include "arealaw/instruments/purification.hpp"

namespace arealaw::cli {

/// Exit statuses of the command line tool.
enum ExitCode : int { ok = 0, bound_violation = 1, config_error = 2, dimension_cap = 3, internal_error = 4 };

struct RunOptions {
  std::size_t jobs = 1;
  std::filesystem::path out_dir = "out";
  bool quiet = false;
};

struct RunArtifacts {
  nlohmann::json record;
  CsvTable table{{}};
  bool held = true;
};

/// The instrument for one template on a d-level system; nothing for "none".
std::optional<Instrument> template_instrument(const InstrumentTemplate& t, std::size_t d, std::uint64_t seed);
/// Purified form of template_instrument; nullptr for "none".
std::shared_ptr<const PurifiedInstrument> make_instrument(const InstrumentTemplate& t, std::size_t d, std::uint64_t seed);

/// Largest Hilbert-space dimension the run will simulate, computed without simulating.
std::size_t estimated_dimension(const ExperimentConfig& cfg);

/// Executes every run of the config; rows are merged in (seed, parameter) order.
RunArtifacts execute(const ExperimentConfig& cfg, std::size_t jobs = 1);

int run_command(const std::filesystem::path& config, const RunOptions& options);
int validate_command(const std::filesystem::path& file, std::ostream& out);
int describe_command(const std::filesystem::path& config, std::ostream& out);

}  // namespace arealaw::cli
