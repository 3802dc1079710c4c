#include "ramancf/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "ramancf/errors.hpp"

namespace ramancf {

std::pair<double, double> special_case_energies(std::size_t n, double omega, double epsilon) {
  const double root = std::sqrt(omega * omega / 4.0 + epsilon * epsilon);
  const double nd = static_cast<double>(n);
  return {nd + root, nd - root};
}

SpecialEigenvector special_case_eigenvector(double omega, double epsilon, int sign) {
  if (omega == 0.0) throw InvalidArgument("special-case eigenvector needs omega != 0");
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  const double root = std::sqrt(omega * omega / 4.0 + epsilon * epsilon);
  const double s = static_cast<double>(sign);
  SpecialEigenvector v;
  v.a = 1.0 + s * 2.0 * root / omega - 2.0 * epsilon / omega;
  v.b = 1.0 - s * 2.0 * root / omega + 2.0 * epsilon / omega;
  // U^dag at g = 0 is (1/sqrt2) [[1, -1], [1, 1]] after the phase e^{-i pi n/2}.
  v.original_up = (v.a - v.b) / (2.0 * std::numbers::sqrt2);
  v.original_down = (v.a + v.b) / (2.0 * std::numbers::sqrt2);
  return v;
}

std::pair<double, double> rwa_energies(std::size_t n, double eta) {
  const double nd = static_cast<double>(n);
  const double base = (2.0 * nd + 1.0) / 4.0 + eta * eta / 4.0;
  const double split = std::sqrt(4.0 * eta * eta * (nd + 1.0) + 1.0) / 4.0;
  return {base + split, base - split};
}

OracleSpectrum oracle_diagonalize(const ModelParams& params, std::size_t n_max, bool want_vectors,
                                  const JacobiOptions& options) {
  if (n_max < 32) throw InvalidArgument("oracle needs n_max >= 32");
  const auto h = build_transformed_hamiltonian(params, n_max);
  JacobiOptions opts = options;
  opts.want_vectors = want_vectors;
  auto eig = jacobi_eigen<double>(h.entries, opts);

  OracleSpectrum out{std::move(eig.values), n_max / 4, n_max, params, {}, eig.sweeps};
  if (want_vectors) out.eigenvectors = std::move(eig.vectors);
  return out;
}

double MatchReport::max_difference() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, p.difference);
  return m;
}

MatchReport match_roots(const std::vector<double>& cf_roots, const OracleSpectrum& oracle,
                        double tol) {
  const auto interior = oracle.interior();
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < cf_roots.size(); ++i) {
    for (std::size_t j = 0; j < interior.size(); ++j) {
      const double d = std::abs(cf_roots[i] - interior[j]);
      if (d <= tol) candidates.emplace_back(d, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<bool> cf_used(cf_roots.size(), false);
  std::vector<bool> oracle_used(interior.size(), false);
  MatchReport report;
  for (const auto& [d, i, j] : candidates) {
    if (cf_used[i] || oracle_used[j]) continue;
    cf_used[i] = oracle_used[j] = true;
    report.pairs.push_back({cf_roots[i], interior[j], d});
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.cf_root < b.cf_root; });
  for (std::size_t i = 0; i < cf_roots.size(); ++i)
    if (!cf_used[i]) report.unmatched_cf.push_back(cf_roots[i]);
  for (std::size_t j = 0; j < interior.size(); ++j)
    if (!oracle_used[j]) report.unmatched_oracle_interior.push_back(interior[j]);
  return report;
}

MatchReport match_roots(const Spectrum& spectrum, const OracleSpectrum& oracle, double tol) {
  std::vector<double> roots;
  roots.reserve(spectrum.roots.size());
  for (const auto& r : spectrum.roots) {
    for (int k = 0; k < r.multiplicity; ++k) roots.push_back(r.energy);
  }
  return match_roots(roots, oracle, tol);
}

}  // namespace ramancf
