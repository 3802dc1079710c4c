#include "ramancf/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramancf/errors.hpp"

namespace ramancf {

std::string_view to_string(Branch branch) {
  return branch == Branch::MinusExp ? "minus" : "plus";
}

Branch parse_branch(std::string_view text) {
  if (text == "minus" || text == "MinusExp") return Branch::MinusExp;
  if (text == "plus" || text == "PlusExp") return Branch::PlusExp;
  throw InvalidArgument("unknown branch '" + std::string(text) + "'");
}

RecurrenceCoeffs coeffs(Branch branch, std::size_t n, double energy, const ModelParams& params) {
  const double nd = static_cast<double>(n);
  const double e = energy;
  const double g = params.g();
  const double g2 = g * g;
  const double eps = params.epsilon();
  const double quarter_omega2 = params.omega() * params.omega() / 4.0;

  RecurrenceCoeffs r;
  r.n = n;
  r.branch = branch;
  r.alpha = 2.0 * g * (nd + 1.0) * (e - eps - 1.0 - nd);
  if (branch == Branch::MinusExp) {
    r.beta = nd * nd + 2.0 * nd * (2.0 * g2 - e) + e * e - eps * eps - quarter_omega2 -
             4.0 * g2 * e + 4.0 * g2 * eps;
    r.gamma = 2.0 * g * (e - eps - nd + 1.0);
  } else {
    r.beta = nd * nd - 2.0 * nd * e - 4.0 * nd * g2 + e * e - eps * eps - quarter_omega2 -
             4.0 * g2;
    r.gamma = 2.0 * g * (nd - eps - e);
  }
  return r;
}

CoefficientSeq run_recurrence(Branch branch, double energy, const ModelParams& params,
                              std::size_t n_terms) {
  if (n_terms == 0) throw InvalidArgument("n_terms must be positive");
  CoefficientSeq seq{{}, branch, energy, params};
  seq.c.reserve(n_terms);
  seq.c.push_back(1.0);
  double prev = 0.0;
  for (std::size_t n = 0; n + 1 < n_terms; ++n) {
    const auto k = coeffs(branch, n, energy, params);
    if (std::abs(k.alpha) < alpha_floor(energy, n)) throw AlphaVanishes(n);
    const double cur = seq.c.back();
    seq.c.push_back(-(k.beta * cur + k.gamma * prev) / k.alpha);
    prev = cur;
  }
  return seq;
}

double residual(const CoefficientSeq& seq) {
  if (seq.c.size() < 3) throw InvalidArgument("residual needs at least three coefficients");
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < seq.c.size(); ++n) {
    const auto k = coeffs(seq.branch, n, seq.energy, seq.params);
    const double t1 = k.alpha * seq.c[n + 1];
    const double t0 = k.beta * seq.c[n];
    const double tm = n == 0 ? 0.0 : k.gamma * seq.c[n - 1];
    const double scale = std::max({std::abs(t1), std::abs(t0), std::abs(tm)});
    // Skip levels where the coefficients have decayed into the subnormal range.
    if (scale < 1e-250) continue;
    worst = std::max(worst, std::abs(t1 + t0 + tm) / scale);
  }
  return worst;
}

ConvergenceReport convergence_report(const CoefficientSeq& seq, double xi_radius,
                                     const ConvergenceOptions& options) {
  if (!(xi_radius > 0.0)) throw InvalidArgument("xi_radius must be positive");
  ConvergenceReport report;
  const std::size_t len = seq.c.size();
  const std::size_t burn_in = options.burn_in.value_or(len / 2);
  const double bound = 1.0 - options.margin;

  double tail_sup = 0.0;
  std::size_t tail_entries = 0;
  bool ok = true;
  for (std::size_t n = 0; n + 1 < len; ++n) {
    if (seq.c[n] == 0.0) {
      report.ratio_estimates.emplace_back();
      continue;
    }
    const double ratio = std::abs(seq.c[n + 1] / seq.c[n]);
    report.ratio_estimates.emplace_back(ratio * xi_radius);
    if (n < burn_in) continue;
    ++tail_entries;
    tail_sup = std::max(tail_sup, ratio);
    if (ratio * xi_radius >= bound && ok) {
      ok = false;
      report.first_divergent_index = n;
    }
  }
  // A series that terminates before the burn-in is a polynomial.
  const bool terminated =
      len > 0 && std::all_of(seq.c.begin() + static_cast<std::ptrdiff_t>(std::min(burn_in, len)),
                             seq.c.end(), [](double v) { return v == 0.0; });
  report.converged = ok && (tail_entries > 0 || terminated);
  report.radius_estimate =
      tail_sup > 0.0 ? 1.0 / tail_sup : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace ramancf
