#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ramancf/cli.hpp"
#include "ramancf/table_io.hpp"

using namespace ramancf;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("defaults and overrides") {
  const auto c = cli::parse_config({"solve"});
  CHECK(c.command == cli::Command::solve);
  CHECK(c.omega == 2.0);
  CHECK(c.tail_depth == 400);
  CHECK(c.resolved_format() == cli::Format::json);
  CHECK(c.delta_grid.size() == 61);
  CHECK(c.eta_grid.front() == doctest::Approx(0.02));

  const auto s = cli::parse_config({"sweep-ed", "--omega-list", "2,4", "--delta-grid", "0:1:0.5"});
  CHECK(s.omega_list == std::vector<double>{2.0, 4.0});
  CHECK(s.delta_grid == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(s.resolved_format() == cli::Format::csv);
}

TEST_CASE("grid parsing") {
  CHECK(cli::parse_grid("0:3:0.05").size() == 61);
  CHECK(cli::parse_grid("0:3:0.05").back() == doctest::Approx(3.0));
  CHECK(cli::parse_grid("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(cli::parse_grid("3:0:-1") == std::vector<double>{3.0, 2.0, 1.0, 0.0});
  CHECK_THROWS_AS(cli::parse_grid("0:1:-0.1"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("a,b"), cli::UsageError);
}

TEST_CASE("usage errors name the flag") {
  const auto r = invoke({"solve", "--eta", "-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--eta") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"solve", "--e-min", "3", "--e-max", "1"}).code == 1);
  CHECK(invoke({"sweep-ed", "--branch", "both"}).code == 1);
  CHECK(invoke({"solve", "--help"}).code == 0);
}

TEST_CASE("configuration files") {
  const auto file = write_temp("ramancf_test.cfg",
                               "# comment\ntail_depth = 800\nomega=4\n\neta-list=0.1,0.3\n");
  const auto c = cli::parse_config({"solve", "--config", file.string(), "--tail-depth", "400"});
  CHECK(c.tail_depth == 400);
  CHECK(c.omega == 4.0);
  CHECK(c.eta_list == std::vector<double>{0.1, 0.3});
  const auto d = cli::parse_config({"solve", "--config", file.string()});
  CHECK(d.tail_depth == 800);

  const auto bad = write_temp("ramancf_bad.cfg", "tail_dept=800\n");
  const auto r = invoke({"solve", "--config", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("tail_dept") != std::string::npos);
  CHECK(invoke({"solve", "--config", "/nonexistent/ramancf.cfg"}).code == 1);
}

TEST_CASE("solve") {
  const auto r = invoke({"solve", "--omega", "2", "--delta", "0.2", "--eta", "0.2", "--e-min",
                         "-2", "--e-max", "2", "--branch", "both"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.at("branches").size() == 2);
  for (const auto& b : j.at("branches")) {
    CHECK_FALSE(b.at("roots").empty());
    for (const auto& root : b.at("roots")) CHECK(root.at("converged") == true);
  }
  // The resolved configuration is echoed before running.
  const auto echoed = json::parse(r.err.substr(0, r.err.find('\n')));
  CHECK(echoed.at("branch") == "both");
}

TEST_CASE("compare agrees with the oracle") {
  const auto r = invoke({"compare", "--e-min", "-2", "--e-max", "3", "--branch", "both"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.dump().find("unmatched") != std::string::npos);
}

TEST_CASE("rwa table and output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "ramancf_cli_out";
  std::filesystem::remove_all(dir);
  ::setenv("RAMANCF_OUTPUT_DIR", dir.string().c_str(), 1);
  const auto r = invoke({"rwa", "--n", "0,1", "--eta-grid", "0:0.1:0.05", "--output", "sub/rwa.csv"});
  ::unsetenv("RAMANCF_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  std::ifstream in(dir / "sub" / "rwa.csv");
  REQUIRE(in.good());
  const auto t = read_csv(in);
  CHECK(t.axis == "eta");
  REQUIRE(t.series.size() == 4);
  CHECK(t.series[0].name == "E_plus_0");
  CHECK(t.series[0].cells[0].value == 0.5);
}

TEST_CASE("fit from a table file") {
  SweepTable t{"delta", {0.0, 0.5, 1.0, 1.5, 2.0}, "omega", {}, {}};
  SweepSeries s{"omega_E_3_eta_0p2", {{"energy", 3.0}, {"eta", 0.2}}, {}};
  for (double d : t.grid) s.cells.push_back({4.0 * (1.0 - 0.02 * d * d), CellStatus::ok, 0.0});
  t.series.push_back(s);
  const auto file = write_temp("ramancf_fit.csv", to_csv(t));
  const auto r = invoke({"fit", "--input", file.string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const auto text = j.dump();
  CHECK(text.find("omega_E_3_eta_0p2") != std::string::npos);
  CHECK(invoke({"fit", "--input", "/nonexistent.csv"}).code == 1);
}
