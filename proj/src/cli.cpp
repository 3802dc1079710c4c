#include "ramancf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ramancf/reference.hpp"
#include "ramancf/spectrum.hpp"
#include "ramancf/sweep.hpp"
#include "ramancf/table_io.hpp"

namespace ramancf::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Command> kCommands{
    {"solve", Command::solve},       {"eigvec", Command::eigvec},     {"oracle", Command::oracle},
    {"compare", Command::compare},   {"sweep-ed", Command::sweep_ed}, {"sweep-ee", Command::sweep_ee},
    {"sweep-od", Command::sweep_od}, {"rwa", Command::rwa},           {"fit", Command::fit}};

const std::map<std::string, BranchChoice> kBranches{
    {"minus", BranchChoice::minus}, {"plus", BranchChoice::plus}, {"both", BranchChoice::both}};

const std::map<std::string, Format> kFormats{{"csv", Format::csv}, {"json", Format::json}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": '" + text + "' is not a finite number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

// Options whose values arrive as text and are converted after parsing.
struct RawText {
  std::string command;
  std::string config;
  std::string branch = "minus";
  std::string format;
  std::string energy;
  std::string track_seed;
  std::string eta_list, omega_list, delta_list, energy_list, n_list;
  std::string delta_grid, eta_grid;
};

void build_app(CLI::App& app, RunConfig& c, RawText& raw) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::vector<std::string> names;
  for (const auto& [k, v] : kCommands) names.push_back(k);

  app.add_option("command", raw.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--config", raw.config, "key=value configuration file (flags take precedence)");

  app.add_option("--omega", c.omega, "Rabi frequency")->check(CLI::NonNegativeNumber);
  app.add_option("--delta", c.delta, "Detuning");
  app.add_option("--eta", c.eta, "Lamb-Dicke parameter")->check(CLI::NonNegativeNumber);
  app.add_option("--branch", raw.branch, "minus | plus | both")
      ->check(CLI::IsMember({"minus", "plus", "both"}));

  app.add_option("--e-min", c.e_min, "Lower end of the energy window");
  app.add_option("--e-max", c.e_max, "Upper end of the energy window");
  app.add_option("--scan-step", c.scan_step, "Energy scan step")->check(CLI::PositiveNumber);
  app.add_option("--tail-depth", c.tail_depth, "Ascending fraction depth")
      ->check(CLI::Range(std::size_t{10}, std::size_t{1000000}));
  app.add_option("--match-index", c.match_index, "Level balancing the fractions")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  app.add_option("--pole-guard", c.pole_guard, "Pole threshold for denominators")
      ->check(CLI::PositiveNumber);
  app.add_option("--root-tol", c.root_tol, "Root bracket tolerance")->check(CLI::PositiveNumber);
  app.add_option("--pair-tol", c.pair_tol, "Close-pair detection distance")
      ->check(CLI::PositiveNumber);
  app.add_option("--n-max", c.n_max, "Fock truncation")
      ->check(CLI::Range(std::size_t{32}, std::size_t{20000}));
  app.add_option("--match-tol", c.match_tol, "Root/oracle matching tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Random seed for oracle spot checks");

  app.add_option("--energy", raw.energy, "eigvec: target energy");
  app.add_option("--track-seed", raw.track_seed, "Sweeps: value selecting the tracked root");
  app.add_option("--omega-min", c.omega_min, "Rabi frequency search minimum")
      ->check(CLI::PositiveNumber);
  app.add_option("--omega-max", c.omega_max, "Rabi frequency search maximum")
      ->check(CLI::PositiveNumber);
  app.add_option("--spot-fraction", c.spot_fraction, "Fraction of sweep cells re-checked")
      ->check(CLI::Range(0.0, 1.0));

  app.add_option("--eta-list", raw.eta_list, "Comma-separated eta values");
  app.add_option("--omega-list", raw.omega_list, "Comma-separated omega values");
  app.add_option("--delta-list", raw.delta_list, "Comma-separated delta values");
  app.add_option("--energy-list", raw.energy_list, "Comma-separated energies");
  app.add_option("--n", raw.n_list, "Comma-separated levels for rwa");
  app.add_option("--delta-grid", raw.delta_grid, "start:stop:step or list");
  app.add_option("--eta-grid", raw.eta_grid, "start:stop:step or list");

  app.add_option("--input", c.input, "fit: CSV table from sweep-od");
  app.add_option("--output", c.output, "Output file (default: standard output)");
  app.add_option("--format", raw.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

// key=value lines become "--key=value" tokens placed before the command line.
std::vector<std::string> config_tokens(const std::string& path, CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config" || key == "help" || key.empty() ||
        app.get_option_no_throw("--" + key) == nullptr) {
      throw UsageError("--config: unknown key '" + trim(line.substr(0, eq)) + "'");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: missing file name");
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  return path;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::vector<Branch> branches(BranchChoice b) {
  switch (b) {
    case BranchChoice::minus: return {Branch::MinusExp};
    case BranchChoice::plus: return {Branch::PlusExp};
    case BranchChoice::both: return {Branch::MinusExp, Branch::PlusExp};
  }
  return {};
}

Branch single_branch(const RunConfig& c) {
  if (c.branch == BranchChoice::both) {
    throw UsageError(std::string("--branch: '") + to_string(c.command) +
                     "' needs a single branch (minus or plus)");
  }
  return branches(c.branch).front();
}

CfConfig cf_config(const RunConfig& c) {
  CfConfig cfg;
  cfg.match_index = c.match_index;
  cfg.tail_depth = c.tail_depth;
  cfg.pole_guard = c.pole_guard;
  return cfg;
}

RootOptions root_options(const RunConfig& c) {
  RootOptions r;
  r.root_tol = c.root_tol;
  r.pair_tol = c.pair_tol;
  return r;
}

json params_json(const ModelParams& p) {
  return {{"omega", p.omega()}, {"delta", p.delta()}, {"eta", p.eta()}, {"g", p.g()},
          {"epsilon", p.epsilon()}};
}

json root_json(const RootDiagnostics& d) {
  return {{"energy", d.energy},
          {"converged", d.converged()},
          {"multiplicity", d.multiplicity},
          {"final_residual", d.final_residual},
          {"recurrence_residual", d.recurrence_residual},
          {"match_index_spread", d.match_index_spread},
          {"depth_change", d.depth_change},
          {"bracket", {d.bracket.first, d.bracket.second}},
          {"series_converged", d.convergence.converged},
          {"radius_estimate", d.convergence.radius_estimate}};
}

json spinor_json(const FockSpinor& s) {
  json up = json::array(), down = json::array();
  for (std::size_t n = 0; n < s.size(); ++n) {
    up.push_back({s.up[n].real(), s.up[n].imag()});
    down.push_back({s.down[n].real(), s.down[n].imag()});
  }
  return {{"up", up}, {"down", down}, {"tail_mass", s.tail_mass}};
}

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("RAMANCF_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  const auto path = resolve_output(c.output);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json versioned(json body) {
  body["schema_version"] = kSchemaVersion;
  return body;
}

int run_solve(const RunConfig& c, std::ostream& out) {
  const ModelParams p(c.omega, c.delta, c.eta);
  json result = {{"params", params_json(p)}, {"branches", json::array()}};
  std::ostringstream csv;
  csv << "branch,energy,converged,multiplicity,recurrence_residual\n";
  for (Branch b : branches(c.branch)) {
    const auto spec = find_roots(b, p, c.e_min, c.e_max, c.scan_step, cf_config(c), root_options(c));
    json roots = json::array();
    for (const auto& r : spec.roots) {
      roots.push_back(root_json(r));
      csv << to_string(b) << ',' << format_double(r.energy) << ',' << (r.converged() ? 1 : 0)
          << ',' << r.multiplicity << ',' << format_double(r.recurrence_residual) << '\n';
    }
    result["branches"].push_back({{"branch", to_string(b)}, {"roots", roots}});
  }
  emit(c, out, c.resolved_format() == Format::json ? dump(versioned(result)) : csv.str());
  return 0;
}

int run_eigvec(const RunConfig& c, std::ostream& out) {
  const Branch b = single_branch(c);
  const ModelParams p(c.omega, c.delta, c.eta);
  const auto spec = find_roots(b, p, c.e_min, c.e_max, c.scan_step, cf_config(c), root_options(c));
  if (spec.roots.empty()) throw Error("no root in the energy window");
  const RootDiagnostics* pick = &spec.roots.front();
  if (c.energy) {
    for (const auto& r : spec.roots) {
      if (std::abs(r.energy - *c.energy) < std::abs(pick->energy - *c.energy)) pick = &r;
    }
  }
  SeriesOptions so;
  so.tail_depth = c.tail_depth;
  const auto sol = series_solution(b, pick->energy, p, std::min<std::size_t>(c.n_max, 400), so);
  const auto transformed = to_fock(sol, c.n_max);
  const auto original = to_original_frame(transformed, p, c.n_max);
  const double res_t = eigen_residual(transformed, build_transformed_hamiltonian(p, c.n_max), pick->energy);
  const double res_o = eigen_residual(original, build_original_hamiltonian(p, c.n_max), pick->energy);

  if (c.resolved_format() == Format::csv) {
    std::ostringstream csv;
    csv << "n,up_re,up_im,down_re,down_im\n";
    for (std::size_t n = 0; n < original.size(); ++n) {
      csv << n << ',' << format_double(original.up[n].real()) << ','
          << format_double(original.up[n].imag()) << ',' << format_double(original.down[n].real())
          << ',' << format_double(original.down[n].imag()) << '\n';
    }
    emit(c, out, csv.str());
  } else {
    emit(c, out,
         dump(versioned({{"params", params_json(p)},
                         {"branch", to_string(b)},
                         {"root", root_json(*pick)},
                         {"residual_transformed", res_t},
                         {"residual_original", res_o},
                         {"transformed", spinor_json(transformed)},
                         {"original", spinor_json(original)}})));
  }
  return 0;
}

int run_oracle(const RunConfig& c, std::ostream& out) {
  const ModelParams p(c.omega, c.delta, c.eta);
  const auto o = oracle_diagonalize(p, c.n_max);
  if (c.resolved_format() == Format::csv) {
    std::ostringstream csv;
    csv << "index,eigenvalue,interior\n";
    for (std::size_t i = 0; i < o.eigenvalues.size(); ++i) {
      csv << i << ',' << format_double(o.eigenvalues[i]) << ',' << (i < o.interior_count ? 1 : 0)
          << '\n';
    }
    emit(c, out, csv.str());
  } else {
    emit(c, out,
         dump(versioned({{"params", params_json(p)},
                         {"n_max", o.n_max},
                         {"interior_count", o.interior_count},
                         {"sweeps", o.sweeps},
                         {"eigenvalues", o.eigenvalues}})));
  }
  return 0;
}

int run_compare(const RunConfig& c, std::ostream& out) {
  if (c.format == Format::csv) throw UsageError("--format: compare writes JSON only");
  const ModelParams p(c.omega, c.delta, c.eta);
  const auto oracle = oracle_diagonalize(p, c.n_max);
  json result = {{"params", params_json(p)}, {"n_max", c.n_max}, {"tol", c.match_tol},
                 {"branches", json::array()}};
  bool all_matched = true;
  for (Branch b : branches(c.branch)) {
    const auto spec = find_roots(b, p, c.e_min, c.e_max, c.scan_step, cf_config(c), root_options(c));
    std::vector<double> converged, skipped;
    for (const auto& r : spec.roots) {
      for (int k = 0; k < r.multiplicity; ++k) (r.converged() ? converged : skipped).push_back(r.energy);
    }
    const auto report = match_roots(converged, oracle, c.match_tol);
    json pairs = json::array();
    for (const auto& m : report.pairs) {
      pairs.push_back({{"cf_root", m.cf_root}, {"oracle", m.oracle_eigenvalue},
                       {"difference", m.difference}});
    }
    all_matched = all_matched && report.unmatched_cf.empty();
    result["branches"].push_back({{"branch", to_string(b)},
                                  {"pairs", pairs},
                                  {"max_difference", report.max_difference()},
                                  {"unmatched_cf", report.unmatched_cf},
                                  {"unmatched_oracle_interior", report.unmatched_oracle_interior},
                                  {"non_converged_cf", skipped}});
  }
  emit(c, out, dump(versioned(result)));
  return all_matched ? 0 : 2;
}

TrackOptions track_options(const RunConfig& c, bool omega_axis) {
  TrackOptions t = omega_axis ? default_omega_tracking() : TrackOptions{};
  if (omega_axis) {
    t.search_min = c.omega_min;
    t.search_max = c.omega_max;
  } else {
    t.search_min = c.e_min;
    t.search_max = c.e_max;
  }
  if (c.track_seed) t.seed = *c.track_seed;
  t.scan_step = c.scan_step;
  t.root = root_options(c);
  t.cfg = cf_config(c);
  return t;
}

// Writes the table (diagnostics included even on partial failure), then
// reports spot checks on err. Numerical failure when every cell is lost or a
// spot check fails.
int finish_sweep(const RunConfig& c, const SweepTable& table, std::ostream& out,
                 std::ostream& err) {
  json spot = json::array();
  bool spot_ok = true;
  if (c.spot_fraction > 0.0) {
    SpotCheckOptions so;
    so.fraction = c.spot_fraction;
    so.seed = c.seed;
    so.n_max = c.n_max;
    so.tol = c.match_tol;
    for (const auto& s : oracle_spot_check(table, so)) {
      spot.push_back({{"series", s.series}, {"grid_index", s.grid_index}, {"value", s.value},
                      {"difference", s.difference}, {"passed", s.passed}});
      spot_ok = spot_ok && s.passed;
    }
  }
  if (c.resolved_format() == Format::csv) {
    emit(c, out, to_csv(table));
  } else {
    auto j = to_json(table);
    j["spot_checks"] = spot;
    emit(c, out, dump(j));
  }
  std::size_t lost = 0, total = 0;
  for (const auto& s : table.series) {
    for (const auto& cell : s.cells) {
      ++total;
      lost += cell.status == CellStatus::continuation_lost;
    }
  }
  err << dump({{"spot_checks", spot.size()}, {"spot_checks_passed", spot_ok},
               {"cells", total}, {"continuation_lost", lost}});
  return (total > 0 && lost == total) || !spot_ok ? 2 : 0;
}

int run_fit(const RunConfig& c, std::ostream& out) {
  if (c.format == Format::csv) throw UsageError("--format: fit writes JSON only");
  SweepTable table;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw UsageError("--input: cannot read '" + c.input + "'");
    try {
      table = read_csv(in);
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--input: ") + e.what());
    }
  } else {
    table = sweep_omega_vs_delta(single_branch(c), c.energy_list, c.eta_list, c.delta_grid,
                                 track_options(c, true));
  }
  const auto report = fit_conjecture(table);
  json series = json::array();
  for (const auto& s : report.series) {
    series.push_back({{"name", s.name}, {"energy", s.energy}, {"eta", s.eta}, {"c0", s.fit.c0},
                      {"c1", s.fit.c1}, {"points", s.fit.points},
                      {"max_relative_residual", s.fit.max_relative_residual},
                      {"positive", s.positive}});
  }
  emit(c, out,
       dump(versioned({{"series", series},
                       {"skipped", report.skipped},
                       {"max_relative_residual", report.max_relative_residual},
                       {"all_positive", report.all_positive}})));
  return 0;
}

}  // namespace

Format RunConfig::resolved_format() const {
  if (format) return *format;
  switch (command) {
    case Command::sweep_ed:
    case Command::sweep_ee:
    case Command::sweep_od:
    case Command::rwa: return Format::csv;
    default: return Format::json;
  }
}

const char* to_string(Command c) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == c) return name.c_str();
  }
  return "?";
}

const char* to_string(BranchChoice b) {
  for (const auto& [name, v] : kBranches) {
    if (v == b) return name.c_str();
  }
  return "?";
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.find(':') == std::string::npos) return parse_list(t, "grid");
  std::vector<std::string> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw UsageError("grid: expected start:stop:step, got '" + text + "'");
  const double start = parse_number(parts[0], "grid");
  const double stop = parse_number(parts[1], "grid");
  const double step = parse_number(parts[2], "grid");
  if (step == 0.0 || (stop - start) * step < 0.0) {
    throw UsageError("grid: step does not move from start towards stop in '" + text + "'");
  }
  constexpr double kReach = 1e-12;
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (step > 0 ? v > stop + kReach : v < stop - kReach) break;
    out.push_back(std::abs(v - stop) <= kReach ? stop : v);
    if (out.size() > 10000000) throw UsageError("grid: too many points in '" + text + "'");
  }
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  RawText raw;
  CLI::App app{"Continued-fraction spectra of a Raman-driven trapped ion", "ramancf"};
  build_app(app, c, raw);

  std::vector<std::string> tokens;
  if (const auto path = find_config_path(args)) tokens = config_tokens(*path, app);
  tokens.insert(tokens.end(), args.begin(), args.end());
  std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.command = kCommands.at(raw.command);
  c.branch = kBranches.at(raw.branch);
  if (!raw.format.empty()) c.format = kFormats.at(raw.format);
  if (!raw.energy.empty()) c.energy = parse_number(raw.energy, "--energy");
  if (!raw.track_seed.empty()) c.track_seed = parse_number(raw.track_seed, "--track-seed");
  if (!raw.eta_list.empty()) c.eta_list = parse_list(raw.eta_list, "--eta-list");
  if (!raw.omega_list.empty()) c.omega_list = parse_list(raw.omega_list, "--omega-list");
  if (!raw.delta_list.empty()) c.delta_list = parse_list(raw.delta_list, "--delta-list");
  if (!raw.energy_list.empty()) c.energy_list = parse_list(raw.energy_list, "--energy-list");
  if (!raw.n_list.empty()) {
    c.n_list.clear();
    for (double v : parse_list(raw.n_list, "--n")) {
      require(v >= 0.0 && v == std::floor(v), "--n: levels must be non-negative integers");
      c.n_list.push_back(static_cast<std::size_t>(v));
    }
  }
  auto grid = [](const std::string& text, const std::string& flag) {
    try {
      auto g = parse_grid(text);
      validate_grid(g);
      return g;
    } catch (const Error& e) {
      throw UsageError(flag + ": " + e.what());
    }
  };
  c.delta_grid = grid(raw.delta_grid.empty() ? "0:3:0.05" : raw.delta_grid, "--delta-grid");
  const std::string eta_default = c.command == Command::rwa ? "0:0.8:0.02" : "0.02:0.8:0.02";
  c.eta_grid = grid(raw.eta_grid.empty() ? eta_default : raw.eta_grid, "--eta-grid");

  require(c.e_min < c.e_max, "--e-min: must be below --e-max");
  require(c.omega_min < c.omega_max, "--omega-min: must be below --omega-max");
  for (double v : c.eta_list) require(v >= 0.0, "--eta-list: eta must be non-negative");
  for (double v : c.eta_grid) require(v >= 0.0, "--eta-grid: eta must be non-negative");
  for (double v : c.omega_list) require(v > 0.0, "--omega-list: omega must be positive");
  const bool needs_omega = c.command == Command::solve || c.command == Command::eigvec ||
                           c.command == Command::compare;
  if (needs_omega) require(c.omega > 0.0, "--omega: must be positive for this command");
  return c;
}

json to_json(const RunConfig& c) {
  json j = {{"command", to_string(c.command)},
            {"omega", c.omega},
            {"delta", c.delta},
            {"eta", c.eta},
            {"branch", to_string(c.branch)},
            {"e_min", c.e_min},
            {"e_max", c.e_max},
            {"scan_step", c.scan_step},
            {"tail_depth", c.tail_depth},
            {"match_index", c.match_index},
            {"pole_guard", c.pole_guard},
            {"root_tol", c.root_tol},
            {"pair_tol", c.pair_tol},
            {"n_max", c.n_max},
            {"match_tol", c.match_tol},
            {"seed", c.seed},
            {"energy", c.energy ? json(*c.energy) : json(nullptr)},
            {"track_seed", c.track_seed ? json(*c.track_seed) : json(nullptr)},
            {"omega_min", c.omega_min},
            {"omega_max", c.omega_max},
            {"spot_fraction", c.spot_fraction},
            {"eta_list", c.eta_list},
            {"omega_list", c.omega_list},
            {"delta_list", c.delta_list},
            {"energy_list", c.energy_list},
            {"n_list", c.n_list},
            {"delta_grid", c.delta_grid},
            {"eta_grid", c.eta_grid},
            {"input", c.input},
            {"output", c.output},
            {"format", c.resolved_format() == Format::csv ? "csv" : "json"},
            {"version", kVersion}};
  return j;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::solve: return run_solve(c, out);
    case Command::eigvec: return run_eigvec(c, out);
    case Command::oracle: return run_oracle(c, out);
    case Command::compare: return run_compare(c, out);
    case Command::sweep_ed:
      return finish_sweep(c,
                          sweep_energy_vs_delta(single_branch(c), c.eta_list, c.omega_list,
                                                c.delta_grid, track_options(c, false)),
                          out, err);
    case Command::sweep_ee:
      return finish_sweep(c,
                          sweep_energy_vs_eta(single_branch(c), c.delta_list, c.omega_list,
                                              c.eta_grid, track_options(c, false)),
                          out, err);
    case Command::sweep_od:
      return finish_sweep(c,
                          sweep_omega_vs_delta(single_branch(c), c.energy_list, c.eta_list,
                                               c.delta_grid, track_options(c, true)),
                          out, err);
    case Command::rwa: {
      RunConfig quiet = c;
      quiet.spot_fraction = 0.0;  // closed form, nothing to re-check
      return finish_sweep(quiet, rwa_sweep(c.n_list, c.eta_grid), out, err);
    }
    case Command::fit: return run_fit(c, out);
  }
  return 1;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  err << to_json(config).dump() << "\n";
  try {
    return run(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ramancf::cli
