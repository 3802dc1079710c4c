#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ramancf/model.hpp"

namespace ramancf {

/// Which exponential prefactor is split off the first spinor combination:
/// MinusExp takes Phi_1 = e^{-g xi} phi(xi), PlusExp takes Phi_1 = e^{+g xi} phi(xi),
/// with xi = alpha + g.
enum class Branch { MinusExp, PlusExp };

std::string_view to_string(Branch branch);
/// Accepts "minus"/"plus" (and the enumerator names).
Branch parse_branch(std::string_view text);

/// Coefficients of alpha_n C_{n+1} + beta_n C_n + gamma_n C_{n-1} = 0.
struct RecurrenceCoeffs {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t n = 0;
  Branch branch = Branch::MinusExp;
};

RecurrenceCoeffs coeffs(Branch branch, std::size_t n, double energy, const ModelParams& params);

/// |alpha_n| below this is treated as a vanishing leading coefficient.
inline double alpha_floor(double energy, std::size_t n) {
  return 1e-13 * (1.0 + std::abs(energy) + static_cast<double>(n));
}

/// Series coefficients C_0..C_{N-1} of phi(xi), normalized to C_0 = 1.
struct CoefficientSeq {
  std::vector<double> c;
  Branch branch;
  double energy;
  ModelParams params;
};

/// Forward recurrence from C_{-1} = 0, C_0 = 1. Throws AlphaVanishes(n) when
/// |alpha_n| < alpha_floor for some n < n_terms - 1.
CoefficientSeq run_recurrence(Branch branch, double energy, const ModelParams& params,
                              std::size_t n_terms);

/// Largest relative three-term residual
///   |a C_{n+1} + b C_n + c C_{n-1}| / max(|a C_{n+1}|, |b C_n|, |c C_{n-1}|)
/// over 0 <= n < N-1 with C_{-1} = 0. Rows whose terms have all decayed into
/// the subnormal range are skipped. Throws
/// InvalidArgument for sequences shorter than 3.
double residual(const CoefficientSeq& seq);

struct ConvergenceOptions {
  /// First index whose ratio must satisfy the bound; defaults to half the
  /// sequence length.
  std::optional<std::size_t> burn_in;
  double margin = 0.05;
};

struct ConvergenceReport {
  bool converged = false;
  /// |C_{n+1}| xi / |C_n| for n = 0..N-2; empty where C_n == 0.
  std::vector<std::optional<double>> ratio_estimates;
  std::optional<std::size_t> first_divergent_index;
  /// 1 / limsup |C_{n+1}/C_n|, estimated from the ratios past burn-in.
  double radius_estimate = 0.0;
};

ConvergenceReport convergence_report(const CoefficientSeq& seq, double xi_radius,
                                     const ConvergenceOptions& options = {});

}  // namespace ramancf
