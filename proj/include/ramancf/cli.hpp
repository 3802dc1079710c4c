#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramancf/errors.hpp"

namespace ramancf::cli {

enum class Command { solve, eigvec, oracle, compare, sweep_ed, sweep_ee, sweep_od, rwa, fit };
enum class BranchChoice { minus, plus, both };
enum class Format { csv, json };

/// Raised for anything the user typed wrong; maps to exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Command command = Command::solve;

  double omega = 2.0;
  double delta = 0.2;
  double eta = 0.2;
  BranchChoice branch = BranchChoice::minus;

  double e_min = -5.0;
  double e_max = 12.0;
  double scan_step = 1e-3;
  std::size_t tail_depth = 400;
  std::size_t match_index = 1;
  double pole_guard = 1e-12;
  double root_tol = 1e-10;
  double pair_tol = 1e-6;
  std::size_t n_max = 200;
  double match_tol = 1e-6;
  std::uint64_t seed = 1;

  /// eigvec: the root nearest this energy; unset picks the lowest root.
  std::optional<double> energy;
  /// Sweeps: the tracked root is the one nearest this value at the first
  /// grid point (an energy, or a Rabi frequency for sweep-od).
  std::optional<double> track_seed;
  double omega_min = 0.01;
  double omega_max = 12.0;
  double spot_fraction = 0.1;

  std::vector<double> eta_list{0.2, 0.4, 0.6, 0.8};
  std::vector<double> omega_list{2.0, 4.0, 6.0};
  std::vector<double> delta_list{0.2, 1.6, 2.0, 3.0};
  std::vector<double> energy_list{3.0, 5.0};
  std::vector<std::size_t> n_list{0, 1, 2};
  std::vector<double> delta_grid;  // default 0:3:0.05
  std::vector<double> eta_grid;    // default 0.02:0.8:0.02 (0:0.8:0.02 for rwa)

  std::string input;   // fit: CSV produced by sweep-od
  std::string output;  // empty: standard output
  std::optional<Format> format;

  Format resolved_format() const;
};

const char* to_string(Command c);
const char* to_string(BranchChoice b);

/// Parses "start:stop:step" (stop included when reached within 1e-12) or a
/// comma-separated list.
std::vector<double> parse_grid(const std::string& text);

/// Parses the arguments after the program name. A `--config FILE` argument
/// loads key=value lines (`#` comments; keys are long flag names, with `_`
/// or `-`); command-line flags override file values, which override
/// defaults. Throws UsageError naming the offending flag or key.
RunConfig parse_config(const std::vector<std::string>& args);

nlohmann::json to_json(const RunConfig& config);

/// Runs the command, writing results to the configured output (or `out`).
/// Returns 0 on success and 2 on numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point: parse, echo the resolved configuration as JSON on `err`, run.
/// Usage errors return 1.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramancf::cli
