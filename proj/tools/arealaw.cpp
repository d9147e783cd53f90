// arealaw run <config.json> [--jobs K] [--out DIR]
// arealaw validate <file.json>
// arealaw describe <config.json>

#include <iostream>

#include "CLI11.hpp"

#include "arealaw/cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace arealaw::cli;
  CLI::App app{"Exact simulation lab for spacetime area laws"};
  app.require_subcommand(1);

  std::string config;
  RunOptions run;
  std::string out_dir = "out";
  auto* run_cmd = app.add_subcommand("run", "run an experiment config; writes <out>/record.json and <out>/sweep.csv");
  run_cmd->add_option("config", config, "experiment config (JSON)")->required();
  run_cmd->add_option("--jobs,-j", run.jobs, "worker threads for independent runs")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out,-o", out_dir, "output directory");
  run_cmd->add_flag("--quiet,-q", run.quiet, "no summary line");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "check a process or instrument JSON document");
  validate_cmd->add_option("file", file, "process or instrument (JSON)")->required();

  auto* describe_cmd = app.add_subcommand("describe", "print geometry, dimension and bounds without simulating");
  describe_cmd->add_option("config", config, "experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitCode::config_error;
  }

  if (*run_cmd) {
    run.out_dir = out_dir;
    return run_command(config, run);
  }
  if (*validate_cmd) return validate_command(file, std::cout);
  return describe_command(config, std::cout);
}
