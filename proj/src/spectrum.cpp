#include "ramancf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ramancf/errors.hpp"

namespace ramancf {

RootDiagnostics diagnose_root(Branch branch, double energy, const ModelParams& params,
                              const CfConfig& cfg, const RootOptions& options) {
  RootDiagnostics d;
  d.energy = energy;
  d.branch = branch;
  d.bracket = {energy, energy};

  const auto ev = char_residual(branch, energy, params, cfg);
  d.final_residual = std::abs(ev.residual);

  // Relocate the root with match indices 1..3; each bracket is widened until
  // the determinant changes sign around the root.
  std::vector<double> located;
  for (std::size_t m = 1; m <= 3; ++m) {
    CfConfig at = cfg;
    at.match_index = m;
    const CharFunction f = [&](double e) { return char_residual(branch, e, params, at); };
    for (double h = 1e-8 * (1.0 + std::abs(energy)); h < 1e-4; h *= 10.0) {
      if (f(energy - h).det_sign != f(energy + h).det_sign) {
        located.push_back(bisect_determinant(f, energy - h, energy + h, 0.0).x);
        break;
      }
    }
  }
  if (located.size() > 1) {
    const auto [lo, hi] = std::minmax_element(located.begin(), located.end());
    d.match_index_spread = *hi - *lo;
  }
  d.spread_ok = d.match_index_spread <= options.spread_factor * options.root_tol;

  CfConfig deeper = cfg;
  deeper.tail_depth = 2 * cfg.tail_depth;
  const auto ev2 = char_residual(branch, energy, params, deeper);
  d.depth_change = std::abs(ev.residual - ev2.residual);
  d.depth_stable = d.depth_change <= options.depth_tol * (1.0 + std::abs(ev.lhs));

  try {
    SeriesOptions so;
    so.tail_depth = cfg.tail_depth;
    so.xi_radius = options.xi_radius;
    const auto sol = series_solution(branch, energy, params, options.series_terms, so);
    d.convergence = sol.convergence;
    d.recurrence_residual = residual(sol.coefficients);
  } catch (const Error&) {
    d.convergence = ConvergenceReport{};
    d.recurrence_residual = std::numeric_limits<double>::infinity();
  }
  return d;
}

RootDiagnostics refine_root(Branch branch, std::pair<double, double> bracket,
                            const ModelParams& params, const CfConfig& cfg, double tol,
                            const RootOptions& options) {
  auto [lo, hi] = bracket;
  if (lo > hi) std::swap(lo, hi);
  if (hi - lo < tol) {
    auto d = diagnose_root(branch, 0.5 * (lo + hi), params, cfg, options);
    d.bracket = {lo, hi};
    return d;
  }
  const auto a = char_residual(branch, lo, params, cfg);
  const auto b = char_residual(branch, hi, params, cfg);
  if (a.pole_flag || b.pole_flag) throw BracketInvalid("bracket endpoint sits on a pole");
  if (a.det_sign == b.det_sign && a.det_sign != 0) {
    if ((a.residual < 0) != (b.residual < 0)) {
      throw BracketInvalid("residual sign change is a pole, not a root");
    }
    throw BracketInvalid("residual has the same sign at both ends");
  }
  const CharFunction f = [&](double e) { return char_residual(branch, e, params, cfg); };
  const auto root = bisect_determinant(f, lo, hi, tol);
  auto d = diagnose_root(branch, root.x, params, cfg, options);
  d.bracket = {lo, hi};
  return d;
}

Spectrum find_roots(Branch branch, const ModelParams& params, double e_min, double e_max,
                    double scan_step, const CfConfig& cfg, const RootOptions& options) {
  cfg.validate();
  if (!(e_min < e_max)) throw InvalidArgument("e_min must be below e_max");
  if (!(scan_step > 0.0)) throw InvalidArgument("scan_step must be positive");

  Spectrum spec{{}, params, branch, {e_min, e_max}, cfg};
  const CharFunction f = [&](double e) { return char_residual(branch, e, params, cfg); };
  ScanOptions so;
  so.tolerance = options.root_tol;
  so.merge_tol = options.merge_tol;
  so.pair_tol = options.pair_tol;
  const auto found = scan_roots(f, e_min, e_max, scan_step, so);

  spec.roots.resize(found.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < found.size(); ++i) {
    auto d = diagnose_root(branch, found[i].x, params, cfg, options);
    d.bracket = {found[i].lo, found[i].hi};
    d.multiplicity = found[i].multiplicity;
    spec.roots[i] = std::move(d);
  }
  return spec;
}

SeriesSolution series_solution(Branch branch, double energy, const ModelParams& params,
                               std::size_t n_terms, const SeriesOptions& options) {
  if (params.omega() == 0.0) throw InvalidArgument("series solution needs omega > 0");
  if (n_terms == 0) throw InvalidArgument("n_terms must be positive");

  // Ratios of the minimal solution, C_n / C_{n-1} = -gamma_n / D_n with
  // D_n = beta_n - alpha_n gamma_{n+1} / D_{n+1}, seeded far below.
  const std::size_t deepest = n_terms + options.tail_depth;
  std::vector<double> ratio(n_terms, 0.0);
  {
    auto above = coeffs(branch, deepest, energy, params);
    double d = above.beta;
    for (std::size_t k = deepest; k > 1; --k) {
      const auto here = coeffs(branch, k - 1, energy, params);
      if (d == 0.0) d = std::numeric_limits<double>::min();
      d = here.beta - here.alpha * above.gamma / d;
      if (k - 1 < n_terms) ratio[k - 1] = -here.gamma / (d == 0.0 ? std::numeric_limits<double>::min() : d);
      above = here;
    }
  }

  // Junction: by default the peak of |C_n| sqrt(n!), where the forward
  // recurrence (used below it) and the ratios (used above it) are both
  // accurate. The forward recurrence stops early if some alpha_n vanishes.
  std::size_t m = 0;
  if (options.match_index) {
    m = std::min(*options.match_index, n_terms - 1);
  } else {
    double log_c = 0.0, best = 0.0;
    for (std::size_t n = 1; n < n_terms; ++n) {
      if (ratio[n] == 0.0) break;
      log_c += std::log(std::abs(ratio[n]));
      const double w = log_c + 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
      if (w > best) {
        best = w;
        m = n;
      }
    }
  }
  // A vanishing alpha_L splits the recurrence into blocks 0..L and L+1..;
  // the junction then sits at L, where the block coupling is cut.
  std::optional<std::size_t> lattice;
  for (std::size_t n = 0; n + 1 < n_terms && !lattice; ++n) {
    if (std::abs(coeffs(branch, n, energy, params).alpha) < alpha_floor(energy, n)) lattice = n;
  }
  if (lattice) {
    if (options.match_index && *lattice < m) throw AlphaVanishes(*lattice);
    m = *lattice;
  }
  CoefficientSeq seq = run_recurrence(branch, energy, params, m + 1);
  if (lattice && m + 2 < n_terms) {
    // When the root is not in the lower block, row m rejects the forward head
    // and C_0..C_m vanish. A vanishing gamma_{m+2} isolates level m+1 as
    // well; the root then sits in the single level or in the block above it.
    const auto k = coeffs(branch, m, energy, params);
    const double a = k.beta * seq.c[m];
    const double b = m > 0 ? k.gamma * seq.c[m - 1] : 0.0;
    if (std::abs(a + b) > 1e-8 * std::max(std::abs(a), std::abs(b))) {
      std::fill(seq.c.begin(), seq.c.end(), 0.0);
      const auto mid = coeffs(branch, m + 1, energy, params);
      const auto next = coeffs(branch, m + 2, energy, params);
      const bool isolated = std::abs(next.gamma) < alpha_floor(energy, m + 2);
      if (!isolated || std::abs(mid.beta) < 1e-8 * (1.0 + std::abs(mid.alpha))) {
        seq.c.push_back(1.0);
        m += 1;
      } else {
        seq.c.push_back(-mid.alpha / mid.beta);
        seq.c.push_back(1.0);
        m += 2;
      }
    }
  }
  for (std::size_t n = m + 1; n < n_terms; ++n) seq.c.push_back(ratio[n] * seq.c.back());

  SeriesSolution sol{branch, energy, params, seq, {}, {}, branch == Branch::MinusExp ? -1.0 : 1.0,
                     {}};
  const double two_over_omega = 2.0 / params.omega();
  const double eps = params.epsilon();
  const double g = params.g();
  const auto& c = sol.coefficients.c;
  sol.upper.resize(c.size());
  sol.lower.resize(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double nd = static_cast<double>(n);
    // Phi_2 from (alpha + g) Phi_1' = (E - g^2 - g alpha - eps) Phi_1 - (Omega/2) Phi_2.
    double phi2 = two_over_omega * (energy - eps - nd) * c[n];
    if (branch == Branch::PlusExp && n > 0) phi2 -= two_over_omega * 2.0 * g * c[n - 1];
    sol.upper[n] = 0.5 * (c[n] + phi2);
    sol.lower[n] = 0.5 * (c[n] - phi2);
  }
  sol.convergence =
      convergence_report(sol.coefficients, options.xi_radius, ConvergenceOptions{});
  return sol;
}

}  // namespace ramancf
