#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "arealaw/cli/config.hpp"
#include "arealaw/cli/csv.hpp"
#include "arealaw/cli/runner.hpp"

using namespace arealaw;
using namespace arealaw::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kSource = AREALAW_SOURCE_DIR;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("arealaw_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

json minimal_sweep() {
  return json::parse(R"({
    "kind": "area_sweep",
    "lattice": {"extents": [6]},
    "hamiltonian": {"template": "ising", "J": 1.0},
    "sigma": [2, 3],
    "timing": {"steps_before": 0, "T_steps": [3], "steps_after": 0, "dt": 1.0}
  })");
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV tables") {
  CsvTable t({"a", "b", "c"});
  t.add({std::string("x"), std::uint64_t{3}, 0.25});
  CHECK(t.str() == "a,b,c\nx,3,0.25\n");
  CHECK_THROWS_AS(t.add({std::string("x")}), std::invalid_argument);
}

TEST_CASE("config parsing") {
  auto cfg = parse_config(minimal_sweep());
  CHECK(cfg.kind == Kind::area_sweep);
  CHECK(cfg.sigma == std::vector<std::size_t>{2, 3});
  CHECK(cfg.timing.T_steps == std::vector<std::size_t>{3});

  auto unknown = minimal_sweep();
  unknown["lattice"]["extent"] = {6};
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  auto top = minimal_sweep();
  top["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(top), ConfigError);
  auto kind = minimal_sweep();
  kind["kind"] = "sweep";
  CHECK_THROWS_AS(parse_config(kind), ConfigError);
  auto unseeded = minimal_sweep();
  unseeded["initial_state"] = "random";
  CHECK_THROWS_AS(parse_config(unseeded), ConfigError);
  unseeded["seed"] = 3;
  CHECK_NOTHROW(parse_config(unseeded));
  auto outside = minimal_sweep();
  outside["sigma"] = {9};
  CHECK_THROWS_AS(parse_config(outside), ConfigError);
}

TEST_CASE("every shipped config parses") {
  for (const auto& entry : fs::directory_iterator(kSource / "configs")) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
  }
}

TEST_CASE("area sweep run") {
  TempDir tmp("sweep");
  RunOptions opts;
  opts.out_dir = tmp.path / "out";
  opts.quiet = true;
  REQUIRE(run_command(kSource / "configs" / "area_sweep.json", opts) == ExitCode::ok);
  std::ifstream in(opts.out_dir / "sweep.csv", std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  auto rows = parse_csv(text.str());
  REQUIRE(rows.size() == 5);
  const std::size_t margin = column(rows[0], "margin_bits"), I = column(rows[0], "I_bits"),
                    bound = column(rows[0], "bound_bits");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(std::stod(rows[r][margin]) >= 0.0);
    CHECK(std::stod(rows[r][bound]) - std::stod(rows[r][I]) == doctest::Approx(std::stod(rows[r][margin])));
  }
  auto record = json::parse(std::ifstream(opts.out_dir / "record.json"));
  CHECK(record["all_held"] == true);
  CHECK(record["runs"].size() == 4);
}

TEST_CASE("process measure on the counterexample") {
  auto art = execute(load_config(kSource / "configs" / "process_counterexample.json"));
  CHECK(art.held);
  CHECK(art.record["I_W_bits"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(art.record["C_W_bits"].get<double>() >= 2.0 - 1e-9);
  CHECK(art.record["counterexample_scheme_bits"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("malformed configs exit 2 without artifacts") {
  TempDir tmp("bad");
  RunOptions opts;
  opts.out_dir = tmp.path / "out";
  opts.quiet = true;
  CHECK(run_command(write_file(tmp.path / "syntax.json", "{\"kind\": "), opts) == ExitCode::config_error);
  CHECK(run_command(write_file(tmp.path / "key.json", R"({"kind": "area_sweep", "bogus": 1})"), opts) ==
        ExitCode::config_error);
  CHECK(run_command(tmp.path / "missing.json", opts) == ExitCode::config_error);
  CHECK_FALSE(fs::exists(opts.out_dir));
}

TEST_CASE("dimension cap") {
  TempDir tmp("cap");
  auto doc = minimal_sweep();
  doc["dim_cap"] = 16;
  auto path = write_file(tmp.path / "capped.json", doc.dump());
  std::ostringstream out;
  CHECK(describe_command(path, out) == ExitCode::dimension_cap);
  CHECK(out.str().find("simulated dimension") != std::string::npos);
  RunOptions opts;
  opts.out_dir = tmp.path / "out";
  opts.quiet = true;
  CHECK(run_command(path, opts) == ExitCode::dimension_cap);
  CHECK_FALSE(fs::exists(opts.out_dir));
}

TEST_CASE("describe prints the boundary measure") {
  TempDir tmp("describe");
  auto path = write_file(tmp.path / "sweep.json", minimal_sweep().dump());
  std::ostringstream out;
  CHECK(describe_command(path, out) == ExitCode::ok);
  CHECK(out.str().find("|dA| = 2|Sigma| + T_tot|dSigma| = 4 + 3*2 = 10") != std::string::npos);

  std::ostringstream harvest;
  CHECK(describe_command(kSource / "configs" / "harvest.json", harvest) == ExitCode::ok);
  CHECK(harvest.str().find("= 2 + 0.4*1 = 2.4") != std::string::npos);
}

TEST_CASE("validate subcommand") {
  std::ostringstream good, broken, ins;
  CHECK(validate_command(kSource / "data" / "counterexample_W.json", good) == ExitCode::ok);
  CHECK(validate_command(kSource / "data" / "broken_W.json", broken) == ExitCode::bound_violation);
  CHECK(broken.str().find("min_eigenvalue") != std::string::npos);
  CHECK(validate_command(kSource / "data" / "depolarize_instrument.json", ins) == ExitCode::ok);
}
