#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ramancf/contfrac.hpp"
#include "ramancf/recurrence.hpp"
#include "ramancf/spectrum.hpp"

namespace ramancf {

inline constexpr const char* kVersion = "0.1.0";

enum class CellStatus { ok, non_converged, continuation_lost };

const char* to_string(CellStatus s);
CellStatus parse_cell_status(const std::string& s);

struct SweepCell {
  /// Tracked value; NaN when the continuation was lost.
  double value = std::numeric_limits<double>::quiet_NaN();
  CellStatus status = CellStatus::continuation_lost;
  /// |lhs - rhs| at the tracked value; NaN when not available.
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct SweepSeries {
  std::string name;
  /// Parameters held fixed along the series (omega, delta, eta, energy, n).
  std::map<std::string, double> fixed;
  std::vector<SweepCell> cells;
};

struct SweepTable {
  std::string axis;      // "delta" or "eta"
  std::vector<double> grid;
  std::string quantity;  // "energy" or "omega"
  std::vector<SweepSeries> series;
  std::map<std::string, std::string> metadata;
};

/// Builds a snake_case series name, e.g. ("E", {{"eta", 0.2}, {"omega", 2}})
/// gives "E_eta_0p2_omega_2".
std::string series_name(const std::string& prefix,
                        const std::vector<std::pair<std::string, double>>& fixed);

/// Throws InvalidArgument unless the grid is non-empty and strictly monotone.
void validate_grid(const std::vector<double>& grid);

struct TrackOptions {
  /// The tracked root is the one nearest the seed at the first grid point.
  /// The default picks the lowest level.
  double seed = kDefaultEnergyMin;
  /// Range searched at the first grid point.
  double search_min = kDefaultEnergyMin;
  double search_max = kDefaultEnergyMax;
  double scan_step = kDefaultScanStep;
  /// Half-width of the window around the predicted root; doubled until a
  /// root appears or max_window is exceeded.
  double initial_window = 0.05;
  double max_window = 1.0;
  RootOptions root;
  CfConfig cfg;
  /// Throw ContinuationLost instead of marking the remaining cells.
  bool strict = false;
};

SweepTable sweep_energy_vs_delta(Branch branch, const std::vector<double>& eta_list,
                                 const std::vector<double>& omega_list,
                                 const std::vector<double>& delta_grid,
                                 const TrackOptions& options = {});

SweepTable sweep_energy_vs_eta(Branch branch, const std::vector<double>& delta_list,
                               const std::vector<double>& omega_list,
                               const std::vector<double>& eta_grid,
                               const TrackOptions& options = {});

struct OmegaScanOptions {
  double scan_step = 1e-3;
  double root_tol = 1e-10;
  double merge_tol = 1e-8;
  CfConfig cfg;
};

/// Rabi frequencies in omega_range at which energy is a root of the
/// characteristic function for fixed (delta, eta). Empty when none exist.
std::vector<double> solve_omega(Branch branch, double energy, double delta, double eta,
                                std::pair<double, double> omega_range,
                                const OmegaScanOptions& options = {});

/// Omega(delta) curves at fixed (E, eta), tracked from the root nearest
/// options.seed (read as a Rabi frequency) within [search_min, search_max].
SweepTable sweep_omega_vs_delta(Branch branch, const std::vector<double>& energy_list,
                                const std::vector<double>& eta_list,
                                const std::vector<double>& delta_grid,
                                const TrackOptions& options);

/// Default tracking options for Omega curves: seed 4, search range [0.01, 12].
TrackOptions default_omega_tracking();

/// Least-squares fit of y = c0 (1 - c1 x^2).
struct ConjectureFit {
  double c0 = 0.0;
  double c1 = 0.0;
  /// max |fit - y| / |y| over the points.
  double max_relative_residual = 0.0;
  std::size_t points = 0;
};

/// Throws InvalidArgument with fewer than 4 points or when c0 vanishes.
ConjectureFit fit_conjecture(const std::vector<double>& x, const std::vector<double>& y);

struct SeriesFit {
  std::string name;
  double energy = 0.0;
  double eta = 0.0;
  ConjectureFit fit;
  bool positive = false;  // c0 > 0 and c1 > 0
};

struct FitReport {
  std::vector<SeriesFit> series;
  /// Series skipped for having fewer than 4 usable cells.
  std::vector<std::string> skipped;
  double max_relative_residual = 0.0;
  bool all_positive = true;
};

/// Fits every series of an Omega-vs-delta table on its converged cells.
/// Throws InvalidArgument for a table of another kind.
FitReport fit_conjecture(const SweepTable& table);

/// Rotating-wave levels E+_n(eta), E-_n(eta) per n, as an eta-axis table.
SweepTable rwa_sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& eta_grid);

struct SpotCheck {
  std::string series;
  std::size_t grid_index;
  double value;
  /// Distance to the nearest interior oracle eigenvalue (energy tables) or
  /// of the series energy to the oracle spectrum at the tracked omega.
  double difference;
  bool passed;
};

struct SpotCheckOptions {
  double fraction = 0.1;
  std::uint64_t seed = 1;
  std::size_t n_max = 200;
  double tol = 1e-6;
};

/// Re-validates a seeded random subsample of converged cells against the
/// dense oracle. At least one cell is checked when any converged cell exists.
std::vector<SpotCheck> oracle_spot_check(const SweepTable& table,
                                         const SpotCheckOptions& options = {});

/// Indices i at which a series decreases: cells i-1 and i both ok and
/// value[i] < value[i-1] - tol. Non-ok cells break the comparison chain.
std::vector<std::size_t> monotonicity_violations(const SweepSeries& series, double tol = 1e-9);

/// Model parameters of a cell, assembled from the series' fixed values, the
/// grid value and (for omega tables) the cell value.
ModelParams cell_params(const SweepTable& table, const SweepSeries& series, std::size_t index);

}  // namespace ramancf
