#include "ramancf/sweep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "ramancf/errors.hpp"
#include "ramancf/reference.hpp"
#include "ramancf/scan.hpp"

namespace ramancf {

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::non_converged: return "non_converged";
    case CellStatus::continuation_lost: return "continuation_lost";
  }
  return "?";
}

CellStatus parse_cell_status(const std::string& s) {
  if (s == "ok") return CellStatus::ok;
  if (s == "non_converged") return CellStatus::non_converged;
  if (s == "continuation_lost") return CellStatus::continuation_lost;
  throw InvalidArgument("unknown cell status '" + s + "'");
}

std::string series_name(const std::string& prefix,
                        const std::vector<std::pair<std::string, double>>& fixed) {
  std::string out = prefix;
  for (const auto& [key, value] : fixed) {
    std::ostringstream os;
    os << std::setprecision(12) << value;
    std::string v = os.str();
    std::replace(v.begin(), v.end(), '.', 'p');
    std::replace(v.begin(), v.end(), '-', 'm');
    out += "_" + key + "_" + v;
  }
  return out;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("grid is empty");
  for (double v : grid) {
    if (!std::isfinite(v)) throw InvalidArgument("grid contains a non-finite value");
  }
  if (grid.size() < 2) return;
  const bool up = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
      throw InvalidArgument("grid is not strictly monotone");
    }
  }
}

namespace {

using GridEval = std::function<CfEval(double grid_value, double x)>;
using GridDiagnose = std::function<RootDiagnostics(double grid_value, double x)>;

std::optional<double> nearest(const std::vector<ScannedRoot>& roots, double target,
                              bool prefer_simple = false) {
  // A double root in the swept variable is usually a tangency that does not
  // survive a parameter change, so seeding skips those when it can.
  const bool any_simple = std::any_of(roots.begin(), roots.end(),
                                      [](const ScannedRoot& r) { return r.multiplicity == 1; });
  std::optional<double> best;
  for (const auto& r : roots) {
    if (prefer_simple && any_simple && r.multiplicity != 1) continue;
    if (!best || std::abs(r.x - target) < std::abs(*best - target)) best = r.x;
  }
  return best;
}

std::vector<SweepCell> track(const std::vector<double>& grid, const GridEval& eval,
                             const GridDiagnose& diagnose, const TrackOptions& opts,
                             std::size_t series_index) {
  std::vector<SweepCell> cells(grid.size());
  std::vector<double> history;
  ScanOptions so;
  so.tolerance = opts.root.root_tol;
  so.merge_tol = opts.root.merge_tol;
  so.pair_tol = opts.root.pair_tol;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gv = grid[i];
    const CharFunction f = [&](double x) { return eval(gv, x); };
    std::optional<double> x;
    if (i == 0) {
      x = nearest(scan_roots(f, opts.search_min, opts.search_max, opts.scan_step, so), opts.seed,
                  true);
    } else {
      const double last = history.back();
      double predicted = last;
      if (history.size() >= 2) {
        const double slope = (last - history[history.size() - 2]) / (grid[i - 1] - grid[i - 2]);
        predicted = last + slope * (gv - grid[i - 1]);
      }
      for (double w = std::max(opts.initial_window, 2.0 * std::abs(predicted - last));
           w <= opts.max_window && !x; w *= 2.0) {
        const double lo = std::max(opts.search_min, predicted - w);
        const double hi = std::min(opts.search_max, predicted + w);
        if (!(lo < hi)) break;
        x = nearest(scan_roots(f, lo, hi, std::min(opts.scan_step, w / 25.0), so), predicted);
      }
    }
    if (!x) {
      if (opts.strict) throw ContinuationLost(series_index, i);
      break;  // remaining cells stay continuation_lost
    }
    const auto d = diagnose(gv, *x);
    cells[i] = {*x, d.converged() ? CellStatus::ok : CellStatus::non_converged, d.final_residual};
    history.push_back(*x);
  }
  return cells;
}

std::map<std::string, std::string> base_metadata(Branch branch, const TrackOptions& opts) {
  std::ostringstream seed, step;
  seed << std::setprecision(17) << opts.seed;
  step << std::setprecision(17) << opts.scan_step;
  return {{"branch", std::string(to_string(branch))},
          {"version", kVersion},
          {"match_index", std::to_string(opts.cfg.match_index)},
          {"tail_depth", std::to_string(opts.cfg.tail_depth)},
          {"seed", seed.str()},
          {"scan_step", step.str()}};
}

// Runs every series concurrently; the first exception (in series order) is
// rethrown after all series finish.
void run_series(SweepTable& table,
                const std::function<std::vector<SweepCell>(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(table.series.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < table.series.size(); ++s) {
    try {
      table.series[s].cells = body(s);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_nonempty(const std::vector<double>& list, const char* what) {
  if (list.empty()) throw InvalidArgument(std::string(what) + " list is empty");
}

}  // namespace

SweepTable sweep_energy_vs_delta(Branch branch, const std::vector<double>& eta_list,
                                 const std::vector<double>& omega_list,
                                 const std::vector<double>& delta_grid,
                                 const TrackOptions& options) {
  validate_grid(delta_grid);
  require_nonempty(eta_list, "eta");
  require_nonempty(omega_list, "omega");
  options.cfg.validate();

  SweepTable table{"delta", delta_grid, "energy", {}, base_metadata(branch, options)};
  for (double eta : eta_list) {
    for (double omega : omega_list) {
      (void)ModelParams(omega, 0.0, eta);  // validates
      table.series.push_back({series_name("E", {{"eta", eta}, {"omega", omega}}),
                              {{"eta", eta}, {"omega", omega}},
                              {}});
    }
  }
  run_series(table, [&](std::size_t s) {
    const double eta = table.series[s].fixed.at("eta");
    const double omega = table.series[s].fixed.at("omega");
    const GridEval eval = [&](double delta, double e) {
      return char_residual(branch, e, ModelParams(omega, delta, eta), options.cfg);
    };
    const GridDiagnose diag = [&](double delta, double e) {
      return diagnose_root(branch, e, ModelParams(omega, delta, eta), options.cfg, options.root);
    };
    return track(delta_grid, eval, diag, options, s);
  });
  return table;
}

SweepTable sweep_energy_vs_eta(Branch branch, const std::vector<double>& delta_list,
                               const std::vector<double>& omega_list,
                               const std::vector<double>& eta_grid,
                               const TrackOptions& options) {
  validate_grid(eta_grid);
  require_nonempty(delta_list, "delta");
  require_nonempty(omega_list, "omega");
  options.cfg.validate();
  for (double eta : eta_grid) (void)ModelParams(1.0, 0.0, eta);

  SweepTable table{"eta", eta_grid, "energy", {}, base_metadata(branch, options)};
  for (double delta : delta_list) {
    for (double omega : omega_list) {
      (void)ModelParams(omega, delta, 0.0);
      table.series.push_back({series_name("E", {{"delta", delta}, {"omega", omega}}),
                              {{"delta", delta}, {"omega", omega}},
                              {}});
    }
  }
  run_series(table, [&](std::size_t s) {
    const double delta = table.series[s].fixed.at("delta");
    const double omega = table.series[s].fixed.at("omega");
    const GridEval eval = [&](double eta, double e) {
      return char_residual(branch, e, ModelParams(omega, delta, eta), options.cfg);
    };
    const GridDiagnose diag = [&](double eta, double e) {
      return diagnose_root(branch, e, ModelParams(omega, delta, eta), options.cfg, options.root);
    };
    return track(eta_grid, eval, diag, options, s);
  });
  return table;
}

std::vector<double> solve_omega(Branch branch, double energy, double delta, double eta,
                                std::pair<double, double> omega_range,
                                const OmegaScanOptions& options) {
  const auto [lo, hi] = omega_range;
  if (!(lo > 0.0) || !(lo < hi) || !std::isfinite(hi)) {
    throw InvalidArgument("omega range must satisfy 0 < lo < hi");
  }
  if (!(options.scan_step > 0.0)) throw InvalidArgument("scan_step must be positive");
  options.cfg.validate();
  (void)ModelParams(lo, delta, eta);

  const CharFunction f = [&](double omega) {
    return char_residual(branch, energy, ModelParams(omega, delta, eta), options.cfg);
  };
  ScanOptions so;
  so.tolerance = options.root_tol;
  so.merge_tol = options.merge_tol;
  std::vector<double> out;
  for (const auto& r : scan_roots(f, lo, hi, options.scan_step, so)) out.push_back(r.x);
  return out;
}

TrackOptions default_omega_tracking() {
  TrackOptions t;
  t.seed = 4.0;
  t.search_min = 0.01;
  t.search_max = 12.0;
  return t;
}

SweepTable sweep_omega_vs_delta(Branch branch, const std::vector<double>& energy_list,
                                const std::vector<double>& eta_list,
                                const std::vector<double>& delta_grid,
                                const TrackOptions& options) {
  validate_grid(delta_grid);
  require_nonempty(energy_list, "energy");
  require_nonempty(eta_list, "eta");
  options.cfg.validate();
  if (!(options.search_min > 0.0)) throw InvalidArgument("omega search range must be positive");

  SweepTable table{"delta", delta_grid, "omega", {}, base_metadata(branch, options)};
  for (double e : energy_list) {
    for (double eta : eta_list) {
      (void)ModelParams(1.0, 0.0, eta);
      table.series.push_back({series_name("omega", {{"E", e}, {"eta", eta}}),
                              {{"energy", e}, {"eta", eta}},
                              {}});
    }
  }
  run_series(table, [&](std::size_t s) {
    const double e = table.series[s].fixed.at("energy");
    const double eta = table.series[s].fixed.at("eta");
    const GridEval eval = [&](double delta, double omega) {
      return char_residual(branch, e, ModelParams(omega, delta, eta), options.cfg);
    };
    const GridDiagnose diag = [&](double delta, double omega) {
      return diagnose_root(branch, e, ModelParams(omega, delta, eta), options.cfg, options.root);
    };
    return track(delta_grid, eval, diag, options, s);
  });
  return table;
}

ConjectureFit fit_conjecture(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit needs equally many x and y values");
  if (x.size() < 4) throw InvalidArgument("fit needs at least 4 points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = x[i] * x[i];
    b(i) = y[i];
  }
  const Eigen::Vector2d p = a.colPivHouseholderQr().solve(b);
  if (p(0) == 0.0) throw InvalidArgument("fitted c0 vanishes");

  ConjectureFit fit;
  fit.c0 = p(0);
  fit.c1 = -p(1) / p(0);
  fit.points = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double model = fit.c0 * (1.0 - fit.c1 * x[i] * x[i]);
    const double scale = y[i] != 0.0 ? std::abs(y[i]) : 1.0;
    fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(model - y[i]) / scale);
  }
  return fit;
}

FitReport fit_conjecture(const SweepTable& table) {
  if (table.quantity != "omega" || table.axis != "delta") {
    throw InvalidArgument("conjecture fit needs an omega-vs-delta table");
  }
  FitReport report;
  for (const auto& s : table.series) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
      if (s.cells[i].status != CellStatus::ok) continue;
      x.push_back(table.grid[i]);
      y.push_back(s.cells[i].value);
    }
    if (x.size() < 4) {
      report.skipped.push_back(s.name);
      continue;
    }
    SeriesFit sf;
    sf.name = s.name;
    if (auto it = s.fixed.find("energy"); it != s.fixed.end()) sf.energy = it->second;
    if (auto it = s.fixed.find("eta"); it != s.fixed.end()) sf.eta = it->second;
    sf.fit = fit_conjecture(x, y);
    sf.positive = sf.fit.c0 > 0.0 && sf.fit.c1 > 0.0;
    report.all_positive = report.all_positive && sf.positive;
    report.max_relative_residual =
        std::max(report.max_relative_residual, sf.fit.max_relative_residual);
    report.series.push_back(std::move(sf));
  }
  return report;
}

SweepTable rwa_sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& eta_grid) {
  validate_grid(eta_grid);
  if (n_list.empty()) throw InvalidArgument("n list is empty");
  for (double eta : eta_grid) {
    if (eta < 0.0) throw InvalidArgument("eta must be non-negative");
  }
  SweepTable table{"eta", eta_grid, "energy", {}, {{"version", kVersion}, {"omega", "2"}}};
  for (std::size_t n : n_list) {
    SweepSeries plus{"E_plus_" + std::to_string(n), {{"n", static_cast<double>(n)}}, {}};
    SweepSeries minus{"E_minus_" + std::to_string(n), {{"n", static_cast<double>(n)}}, {}};
    for (double eta : eta_grid) {
      const auto [ep, em] = rwa_energies(n, eta);
      plus.cells.push_back({ep, CellStatus::ok, 0.0});
      minus.cells.push_back({em, CellStatus::ok, 0.0});
    }
    table.series.push_back(std::move(plus));
    table.series.push_back(std::move(minus));
  }
  return table;
}

ModelParams cell_params(const SweepTable& table, const SweepSeries& series, std::size_t index) {
  auto get = [&](const std::string& key) {
    auto it = series.fixed.find(key);
    return it == series.fixed.end() ? 0.0 : it->second;
  };
  double omega = get("omega"), delta = get("delta"), eta = get("eta");
  const double gv = table.grid.at(index);
  if (table.axis == "delta") delta = gv;
  else if (table.axis == "eta") eta = gv;
  else if (table.axis == "omega") omega = gv;
  if (table.quantity == "omega") omega = series.cells.at(index).value;
  return ModelParams(omega, delta, eta);
}

std::vector<SpotCheck> oracle_spot_check(const SweepTable& table,
                                         const SpotCheckOptions& options) {
  if (!(options.fraction > 0.0 && options.fraction <= 1.0)) {
    throw InvalidArgument("spot-check fraction must lie in (0, 1]");
  }
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t s = 0; s < table.series.size(); ++s) {
    for (std::size_t i = 0; i < table.series[s].cells.size(); ++i) {
      if (table.series[s].cells[i].status == CellStatus::ok) candidates.emplace_back(s, i);
    }
  }
  if (candidates.empty()) return {};
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(options.fraction * candidates.size())));
  std::vector<std::pair<std::size_t, std::size_t>> picked;
  std::mt19937_64 rng(options.seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(picked), k, rng);

  std::vector<SpotCheck> out(picked.size());
  std::vector<std::exception_ptr> errors(picked.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < picked.size(); ++j) {
    try {
      const auto [s, i] = picked[j];
      const auto& series = table.series[s];
      const double value = series.cells[i].value;
      const auto oracle = oracle_diagonalize(cell_params(table, series, i), options.n_max);
      const double target = table.quantity == "omega" ? series.fixed.at("energy") : value;
      double best = std::numeric_limits<double>::infinity();
      for (double ev : oracle.interior()) best = std::min(best, std::abs(ev - target));
      out[j] = {series.name, i, value, best, best <= options.tol};
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::size_t> monotonicity_violations(const SweepSeries& series, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < series.cells.size(); ++i) {
    const auto& a = series.cells[i - 1];
    const auto& b = series.cells[i];
    if (a.status == CellStatus::ok && b.status == CellStatus::ok && b.value < a.value - tol) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace ramancf
