#pragma once

#include <functional>
#include <vector>

#include "ramancf/contfrac.hpp"

namespace ramancf {

/// A characteristic function of one scalar variable (energy or Rabi frequency).
using CharFunction = std::function<CfEval(double)>;

struct ScanOptions {
  /// Width below which a bracket counts as converged; bisection then keeps
  /// going until it cannot shrink the bracket any further.
  double tolerance = 1e-10;
  /// Two roots closer than this are merged.
  double merge_tol = 1e-8;
  /// A local minimum of |det| whose quadratic model places a complex pair of
  /// zeros within this distance of the real axis is reported as a double root.
  double pair_tol = 1e-6;
  bool detect_pairs = true;
};

struct ScannedRoot {
  double x = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int multiplicity = 1;
};

/// Bisection on the determinant sign. Requires det_sign to differ at lo and
/// hi; throws BracketInvalid otherwise. A bracket narrower than tolerance
/// returns its midpoint without further evaluation.
ScannedRoot bisect_determinant(const CharFunction& f, double lo, double hi, double tolerance);

/// Evaluates f on a uniform grid over [lo, hi], refines every determinant sign
/// change by bisection and, if enabled, resolves close or double roots hidden
/// between grid points via local minima of |det|. Sign changes of the residual
/// that the determinant does not share are poles and are skipped.
std::vector<ScannedRoot> scan_roots(const CharFunction& f, double lo, double hi, double step,
                                    const ScanOptions& options = {});

}  // namespace ramancf
