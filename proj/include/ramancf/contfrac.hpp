#pragma once

#include <cstddef>
#include <optional>

#include "ramancf/model.hpp"
#include "ramancf/recurrence.hpp"

namespace ramancf {

struct CfConfig {
  /// Level n at which the descending and ascending fractions are balanced.
  std::size_t match_index = 1;
  /// Number of ascending levels kept before the tail is replaced by zero.
  std::size_t tail_depth = 400;
  /// Denominators with magnitude at or below this are reported as poles.
  double pole_guard = 1e-12;

  /// Throws InvalidArgument unless match_index >= 1, tail_depth >= 10 and
  /// pole_guard > 0.
  void validate() const;
};

/// One side of the characteristic equation with its pole diagnostics.
struct FractionSide {
  double value = 0.0;
  double min_denominator = 0.0;
  std::optional<std::size_t> pole_level;
};

/// Evaluation of the characteristic function at one energy.
///
/// Besides lhs - rhs, the evaluation carries the sign and scaled magnitude of
/// the truncated tridiagonal determinant
///   det = L_0 ... L_{m-1} * (lhs - rhs) * D_{m+1} ... D_{m+depth},
/// where L_k are the descending and D_k the ascending denominators. The
/// determinant is a polynomial in the energy, so unlike the residual it has
/// no poles: its sign flips exactly at roots. scaled_det divides each factor
/// by sqrt(1 + beta_k^2) to keep the magnitude representable.
struct CfEval {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pole_flag = false;
  double min_denominator = 0.0;
  int det_sign = 1;
  double log_abs_scaled_det = 0.0;

  double scaled_det() const;
};

/// beta_m - gamma_m alpha_{m-1} / (beta_{m-1} - ... - gamma_1 alpha_0 / beta_0),
/// evaluated bottom-up. Throws PoleEncountered on a denominator within the
/// pole guard.
FractionSide eval_lhs(Branch branch, double energy, const ModelParams& params,
                      const CfConfig& cfg);

/// alpha_m gamma_{m+1} / (beta_{m+1} - alpha_{m+1} gamma_{m+2} / (beta_{m+2} - ...)),
/// truncated after cfg.tail_depth levels and evaluated from the deepest level.
/// Throws PoleEncountered like eval_lhs.
FractionSide eval_rhs(Branch branch, double energy, const ModelParams& params,
                      const CfConfig& cfg);

/// Never throws on poles; they are reported through pole_flag.
CfEval char_residual(Branch branch, double energy, const ModelParams& params,
                     const CfConfig& cfg);

}  // namespace ramancf
