#include "ramancf/scan.hpp"

#include <algorithm>
#include <cmath>

#include "ramancf/errors.hpp"

namespace ramancf {

namespace {

struct Sample {
  double x;
  int sign;
  double log_abs;
};

Sample sample(const CharFunction& f, double x) {
  const auto ev = f(x);
  return {x, ev.det_sign, ev.log_abs_scaled_det};
}

}  // namespace

ScannedRoot bisect_determinant(const CharFunction& f, double lo, double hi, double tolerance) {
  if (!(lo < hi)) throw BracketInvalid("bracket must satisfy lo < hi");
  ScannedRoot root{0.5 * (lo + hi), lo, hi, 1};
  if (hi - lo < tolerance) return root;

  const int s_lo = f(lo).det_sign;
  const int s_hi = f(hi).det_sign;
  if (s_lo == 0) return {lo, lo, lo, 1};
  if (s_hi == 0) return {hi, hi, hi, 1};
  if (s_lo == s_hi) {
    throw BracketInvalid("characteristic determinant has the same sign at both ends");
  }
  double a = lo;
  double b = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const int s = f(mid).det_sign;
    if (s == 0) {
      a = b = mid;
      break;
    }
    (s == s_lo ? a : b) = mid;
  }
  return {0.5 * (a + b), lo, hi, 1};
}

namespace {

// Golden-section minimization of log|det| on [a, b].
Sample minimize_det(const CharFunction& f, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  Sample sc = sample(f, c);
  Sample sd = sample(f, d);
  for (int it = 0; it < 120 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (sc.sign == 0) return sc;
    if (sd.sign == 0) return sd;
    if (sc.log_abs < sd.log_abs) {
      b = d;
      d = c;
      sd = sc;
      c = b - inv_phi * (b - a);
      sc = sample(f, c);
    } else {
      a = c;
      c = d;
      sc = sd;
      d = a + inv_phi * (b - a);
      sd = sample(f, d);
    }
  }
  return sc.log_abs < sd.log_abs ? sc : sd;
}

double signed_value(const Sample& s) { return s.sign * std::exp(s.log_abs); }

}  // namespace

std::vector<ScannedRoot> scan_roots(const CharFunction& f, double lo, double hi, double step,
                                    const ScanOptions& options) {
  if (!(lo < hi)) throw InvalidArgument("scan range must satisfy lo < hi");
  if (!(step > 0.0)) throw InvalidArgument("scan step must be positive");

  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
  std::vector<Sample> grid(intervals + 1);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = (i == intervals) ? hi : lo + static_cast<double>(i) * step;
    grid[i] = sample(f, x);
  }

  std::vector<ScannedRoot> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto& a = grid[i];
    const auto& b = grid[i + 1];
    if (a.sign == 0) {
      roots.push_back({a.x, a.x, a.x, 1});
      continue;
    }
    if (b.sign != 0 && a.sign != b.sign) {
      roots.push_back(bisect_determinant(f, a.x, b.x, options.tolerance));
    }
  }
  if (grid.back().sign == 0) roots.push_back({grid.back().x, grid.back().x, grid.back().x, 1});

  if (options.detect_pairs) {
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const auto& l = grid[i - 1];
      const auto& c = grid[i];
      const auto& r = grid[i + 1];
      if (l.sign == 0 || c.sign == 0 || r.sign == 0) continue;
      if (l.sign != c.sign || c.sign != r.sign) continue;
      if (!(c.log_abs < l.log_abs && c.log_abs < r.log_abs)) continue;

      const Sample m = minimize_det(f, l.x, r.x);
      if (m.sign == 0) {
        roots.push_back({m.x, l.x, r.x, 2});
        continue;
      }
      if (m.sign != c.sign) {
        // Two simple roots straddle the minimum.
        roots.push_back(bisect_determinant(f, l.x, m.x, options.tolerance));
        roots.push_back(bisect_determinant(f, m.x, r.x, options.tolerance));
        continue;
      }
      // Close pair on one side of the minimum: look for sign changes on a
      // fine local grid before falling back to the quadratic model.
      const double reach = 4.0 * options.pair_tol;
      const double fine_lo = std::max(l.x, m.x - reach);
      const double fine_hi = std::min(r.x, m.x + reach);
      constexpr int fine_points = 64;
      Sample prev = sample(f, fine_lo);
      bool split = false;
      for (int k = 1; k <= fine_points; ++k) {
        const Sample next = sample(f, fine_lo + (fine_hi - fine_lo) * k / fine_points);
        if (prev.sign != 0 && next.sign != 0 && prev.sign != next.sign) {
          roots.push_back(bisect_determinant(f, prev.x, next.x, options.tolerance));
          split = true;
        }
        prev = next;
      }
      if (split) continue;

      // Quadratic model det ~ d0 + d2 (x - x0)^2 around the minimum; a complex
      // pair of zeros sits at distance sqrt(d0 / d2) from the real axis.
      const double h = options.pair_tol;
      const double d0 = signed_value(m);
      const double dp = signed_value(sample(f, m.x + h));
      const double dm = signed_value(sample(f, m.x - h));
      const double curvature = (dp + dm - 2.0 * d0) / (h * h);
      if (curvature == 0.0 || d0 * curvature < 0.0) continue;
      const double gap = std::sqrt(2.0 * d0 / curvature);
      if (gap <= options.pair_tol) roots.push_back({m.x, l.x, r.x, 2});
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const ScannedRoot& a, const ScannedRoot& b) { return a.x < b.x; });
  std::vector<ScannedRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.x - merged.back().x <= options.merge_tol) {
      merged.back().multiplicity += r.multiplicity;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace ramancf
