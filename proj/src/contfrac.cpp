#include "ramancf/contfrac.hpp"

#include <cmath>
#include <limits>

#include "ramancf/errors.hpp"

namespace ramancf {

void CfConfig::validate() const {
  if (match_index < 1) throw InvalidArgument("match_index must be at least 1");
  if (tail_depth < 10) throw InvalidArgument("tail_depth must be at least 10");
  if (!(pole_guard > 0.0)) throw InvalidArgument("pole_guard must be positive");
}

double CfEval::scaled_det() const {
  return static_cast<double>(det_sign) * std::exp(log_abs_scaled_det);
}

namespace {

// Running product of pivots, kept as sign and log magnitude.
struct PivotProduct {
  int sign = 1;
  double log_abs = 0.0;

  void add(double pivot, double beta) {
    if (pivot < 0.0) sign = -sign;
    log_abs += std::log(std::abs(pivot)) - 0.5 * std::log1p(beta * beta);
  }
};

// Exact zeros would break both the fraction and the determinant sign; nudge
// them to the smallest normal number, which the pole guard still reports.
double nudge(double d) {
  return d == 0.0 ? std::numeric_limits<double>::min() : d;
}

struct SideResult {
  FractionSide side;
  PivotProduct pivots;
};

SideResult descend(Branch branch, double energy, const ModelParams& params,
                   const CfConfig& cfg) {
  SideResult out;
  out.side.min_denominator = std::numeric_limits<double>::infinity();
  auto below = coeffs(branch, 0, energy, params);
  double denom = nudge(below.beta);
  for (std::size_t k = 1; k <= cfg.match_index; ++k) {
    const double mag = std::abs(denom);
    if (mag < out.side.min_denominator) out.side.min_denominator = mag;
    if (mag <= cfg.pole_guard && !out.side.pole_level) out.side.pole_level = k - 1;
    out.pivots.add(denom, below.beta);
    const auto here = coeffs(branch, k, energy, params);
    denom = here.beta - here.gamma * below.alpha / denom;
    if (k < cfg.match_index) denom = nudge(denom);
    below = here;
  }
  out.side.value = denom;
  return out;
}

SideResult ascend(Branch branch, double energy, const ModelParams& params,
                  const CfConfig& cfg) {
  SideResult out;
  out.side.min_denominator = std::numeric_limits<double>::infinity();
  const std::size_t m = cfg.match_index;
  const std::size_t deepest = m + cfg.tail_depth;
  auto above = coeffs(branch, deepest, energy, params);
  double denom = nudge(above.beta);
  for (std::size_t k = deepest; k > m; --k) {
    const double mag = std::abs(denom);
    if (mag < out.side.min_denominator) out.side.min_denominator = mag;
    if (mag <= cfg.pole_guard) out.side.pole_level = k;
    out.pivots.add(denom, above.beta);
    const auto here = coeffs(branch, k - 1, energy, params);
    if (k - 1 == m) {
      out.side.value = here.alpha * above.gamma / denom;
    } else {
      denom = nudge(here.beta - here.alpha * above.gamma / denom);
    }
    above = here;
  }
  return out;
}

}  // namespace

FractionSide eval_lhs(Branch branch, double energy, const ModelParams& params,
                      const CfConfig& cfg) {
  cfg.validate();
  auto r = descend(branch, energy, params, cfg);
  if (r.side.pole_level) throw PoleEncountered(*r.side.pole_level);
  return r.side;
}

FractionSide eval_rhs(Branch branch, double energy, const ModelParams& params,
                      const CfConfig& cfg) {
  cfg.validate();
  auto r = ascend(branch, energy, params, cfg);
  if (r.side.pole_level) throw PoleEncountered(*r.side.pole_level);
  return r.side;
}

CfEval char_residual(Branch branch, double energy, const ModelParams& params,
                     const CfConfig& cfg) {
  cfg.validate();
  const auto lhs = descend(branch, energy, params, cfg);
  const auto rhs = ascend(branch, energy, params, cfg);

  CfEval ev;
  ev.lhs = lhs.side.value;
  ev.rhs = rhs.side.value;
  ev.residual = ev.lhs - ev.rhs;
  ev.min_denominator = std::min(lhs.side.min_denominator, rhs.side.min_denominator);
  ev.pole_flag = ev.min_denominator <= cfg.pole_guard;

  PivotProduct det;
  det.sign = lhs.pivots.sign * rhs.pivots.sign;
  det.log_abs = lhs.pivots.log_abs + rhs.pivots.log_abs;
  const double beta_m = coeffs(branch, cfg.match_index, energy, params).beta;
  if (ev.residual == 0.0) {
    ev.det_sign = 0;
    ev.log_abs_scaled_det = -std::numeric_limits<double>::infinity();
  } else {
    det.add(ev.residual, beta_m);
    ev.det_sign = det.sign;
    ev.log_abs_scaled_det = det.log_abs;
  }
  return ev;
}

}  // namespace ramancf
