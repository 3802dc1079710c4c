#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ramancf/contfrac.hpp"
#include "ramancf/model.hpp"
#include "ramancf/recurrence.hpp"
#include "ramancf/scan.hpp"

namespace ramancf {

inline constexpr double kDefaultEnergyMin = -5.0;
inline constexpr double kDefaultEnergyMax = 12.0;
inline constexpr double kDefaultScanStep = 1e-3;

struct RootOptions {
  double root_tol = 1e-10;
  double merge_tol = 1e-8;
  double pair_tol = 1e-6;
  /// Coefficients kept for the per-root convergence diagnostic.
  std::size_t series_terms = 80;
  /// Radius in xi at which coefficient ratios are judged.
  double xi_radius = 8.0;
  /// Depth-doubling stability bound, relative to 1 + |lhs|.
  double depth_tol = 1e-9;
  /// Match-index spread bound in units of root_tol.
  double spread_factor = 10.0;
};

struct RootDiagnostics {
  double energy = 0.0;
  /// |lhs - rhs| at the configured match index.
  double final_residual = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  /// Largest relative residual of the three-term recurrence over the series
  /// coefficients at this energy; infinite when the series cannot be built.
  double recurrence_residual = 0.0;
  /// Spread of the root relocated with match indices 1..3 (zero for a root
  /// without a determinant sign change, i.e. a resolved double root).
  double match_index_spread = 0.0;
  ConvergenceReport convergence;
  Branch branch = Branch::MinusExp;
  /// |residual(depth) - residual(2 depth)| at the root.
  double depth_change = 0.0;
  bool depth_stable = false;
  bool spread_ok = false;
  int multiplicity = 1;

  bool converged() const { return convergence.converged && depth_stable; }
};

struct Spectrum {
  std::vector<RootDiagnostics> roots;  // strictly increasing in energy
  ModelParams params;
  Branch branch;
  std::pair<double, double> scan_range;
  CfConfig cfg;
};

/// All pole-free sign changes (and resolved close pairs) of the
/// characteristic determinant in [e_min, e_max]. An empty spectrum is valid.
Spectrum find_roots(Branch branch, const ModelParams& params, double e_min, double e_max,
                    double scan_step, const CfConfig& cfg = {}, const RootOptions& options = {});

/// Bisection of a bracket whose determinant sign differs at the ends. Throws
/// BracketInvalid when the signs agree (including brackets that only straddle
/// a pole of the residual) or an endpoint sits on a pole.
RootDiagnostics refine_root(Branch branch, std::pair<double, double> bracket,
                            const ModelParams& params, const CfConfig& cfg, double tol,
                            const RootOptions& options = {});

/// Diagnostics for an already located root.
RootDiagnostics diagnose_root(Branch branch, double energy, const ModelParams& params,
                              const CfConfig& cfg, const RootOptions& options = {});

struct SeriesOptions {
  /// Level joining the forward head and the minimal-solution tail; unset
  /// picks the peak of |C_n| sqrt(n!).
  std::optional<std::size_t> match_index;
  /// Extra ascending levels used to seed the minimal-solution ratios.
  std::size_t tail_depth = 400;
  double xi_radius = 8.0;
};

/// Eigenfunction in the transformed frame:
///   Psi_up(alpha)   = e^{s g (alpha + g)} sum_n upper[n] (alpha + g)^n
///   Psi_down(alpha) = e^{s g (alpha + g)} sum_n lower[n] (alpha + g)^n
/// with s = -1 for MinusExp and +1 for PlusExp.
struct SeriesSolution {
  Branch branch;
  double energy;
  ModelParams params;
  /// C_n: forward recurrence up to the junction, minimal-solution ratios
  /// beyond it (the forward recurrence alone is unstable). At a lattice
  /// energy where alpha_m = 0 and the root belongs to the upper block,
  /// C_0..C_m are zero and C_{m+1} = 1.
  CoefficientSeq coefficients;
  std::vector<double> upper;
  std::vector<double> lower;
  double exp_sign;
  ConvergenceReport convergence;
};

/// Throws InvalidArgument for omega == 0 and propagates AlphaVanishes.
SeriesSolution series_solution(Branch branch, double energy, const ModelParams& params,
                               std::size_t n_terms, const SeriesOptions& options = {});

/// Spin-resolved Fock amplitudes, index n = 0..size-1.
struct FockSpinor {
  std::vector<Complex> up;
  std::vector<Complex> down;
  double energy = 0.0;
  /// Fraction of the norm discarded by truncation.
  double tail_mass = 0.0;

  std::size_t size() const { return up.size(); }
  double norm() const;
};

/// Expands the series into Fock amplitudes (alpha^k <-> sqrt(k!) |k>), keeps
/// n_max levels and normalizes. Throws TailMassExceeded when the discarded
/// mass exceeds tail_tol.
FockSpinor to_fock(const SeriesSolution& sol, std::size_t n_max, double tail_tol = 1e-10);

/// Applies U^dag, mapping a transformed-frame spinor to the original frame.
/// The spinor is padded to n_max and propagated on a larger working space;
/// mass pushed past n_max counts as tail mass.
FockSpinor to_original_frame(const FockSpinor& spinor, const ModelParams& params,
                             std::size_t n_max, double tail_tol = 1e-10);

/// Applies U, the inverse of to_original_frame.
FockSpinor to_transformed_frame(const FockSpinor& spinor, const ModelParams& params,
                                std::size_t n_max, double tail_tol = 1e-10);

/// Spinor stored as a column in the 2n + s basis order.
Eigen::VectorXcd to_vector(const FockSpinor& spinor);
FockSpinor from_vector(const Eigen::VectorXcd& v, double energy);

/// ||H psi - E psi|| / ||psi||. Throws InvalidArgument on a dimension mismatch.
template <class Scalar>
double eigen_residual(const FockSpinor& spinor, const FockSpinMatrix<Scalar>& h, double energy);

extern template double eigen_residual(const FockSpinor&, const FockSpinMatrix<double>&, double);
extern template double eigen_residual(const FockSpinor&, const FockSpinMatrix<Complex>&, double);

}  // namespace ramancf
