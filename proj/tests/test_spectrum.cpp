#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramancf/errors.hpp"
#include "ramancf/reference.hpp"
#include "ramancf/spectrum.hpp"

using namespace ramancf;

namespace {

std::vector<double> analytic_levels(double omega, double delta, double lo, double hi) {
  std::vector<double> out;
  for (std::size_t n = 0; n < 40; ++n) {
    const auto [p, m] = special_case_energies(n, omega, -delta / 2);
    if (p >= lo && p <= hi) out.push_back(p);
    if (m >= lo && m <= hi) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Rabi frequencies in (0.01, 12) at which E = 3 is an eigenvalue.
std::vector<double> solve_omega_roots_for_test(const ModelParams& p) {
  const CharFunction f = [&](double omega) {
    return char_residual(Branch::MinusExp, 3.0, p.with_omega(omega), {});
  };
  std::vector<double> out;
  for (const auto& r : scan_roots(f, 0.01, 12.0, 1e-3)) out.push_back(r.x);
  return out;
}

}  // namespace

TEST_CASE("small coupling reproduces the special-case levels") {
  const ModelParams p(2.0, 2.0, 1e-6);
  const auto expected = analytic_levels(2.0, 2.0, -3.0, 8.0);
  for (Branch b : {Branch::MinusExp, Branch::PlusExp}) {
    const auto spec = find_roots(b, p, -3.0, 8.0, 1e-3);
    std::vector<double> found;
    for (const auto& r : spec.roots)
      for (int k = 0; k < r.multiplicity; ++k) found.push_back(r.energy);
    REQUIRE(found.size() == expected.size());
    for (std::size_t i = 0; i < found.size(); ++i) CHECK(std::abs(found[i] - expected[i]) < 1e-5);
  }
}

TEST_CASE("every root matches the oracle") {
  const ModelParams p(2.0, 0.2, 0.2);
  const auto oracle = oracle_diagonalize(p, 200);
  for (Branch b : {Branch::MinusExp, Branch::PlusExp}) {
    const auto spec = find_roots(b, p, -2.0, 8.0, 1e-3);
    CHECK(spec.roots.size() >= 15);
    const auto report = match_roots(spec, oracle, 1e-6);
    CHECK(report.unmatched_cf.empty());
    for (std::size_t i = 1; i < spec.roots.size(); ++i)
      CHECK(spec.roots[i].energy - spec.roots[i - 1].energy > 1e-8);
    for (const auto& r : spec.roots) {
      CHECK(r.bracket.first <= r.energy);
      CHECK(r.energy <= r.bracket.second);
      CHECK(r.recurrence_residual <= 1e-10);
      CHECK(r.spread_ok);
      CHECK(r.depth_stable);
    }
  }
}

TEST_CASE("window without eigenvalues gives an empty spectrum") {
  const ModelParams p(2.0, 0.2, 0.2);
  CHECK(find_roots(Branch::MinusExp, p, -4.0, -3.0, 1e-3).roots.empty());
  CHECK_THROWS_AS(find_roots(Branch::MinusExp, p, 1.0, 1.0, 1e-3), InvalidArgument);
  CHECK_THROWS_AS(find_roots(Branch::MinusExp, p, 0.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("scan step halving keeps the root set") {
  const ModelParams p(4.0, 1.6, 0.6);
  const auto a = find_roots(Branch::PlusExp, p, -5.0, 6.0, 2e-3);
  const auto b = find_roots(Branch::PlusExp, p, -5.0, 6.0, 1e-3);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i)
    CHECK(std::abs(a.roots[i].energy - b.roots[i].energy) <= 1e-10);
}

TEST_CASE("refine_root") {
  const ModelParams p(2.0, 2.0, 1e-6);
  const double target = 2.0 + std::numbers::sqrt2;

  SUBCASE("special-case bracket") {
    const auto d = refine_root(Branch::MinusExp, {target - 0.1, target + 0.1}, p, {}, 1e-12);
    CHECK(std::abs(d.energy - target) < 1e-10);
  }
  SUBCASE("tight bracket returns its midpoint") {
    const auto d = refine_root(Branch::MinusExp, {1.0, 1.0 + 1e-13}, p, {}, 1e-10);
    CHECK(d.energy == 0.5 * (1.0 + (1.0 + 1e-13)));
  }
  SUBCASE("bracket around a pole is rejected") {
    const ModelParams q(2.0, 0.2, 0.2);
    std::optional<std::pair<double, double>> pole;
    CfEval prev = char_residual(Branch::MinusExp, -2.0, q, {});
    for (double e = -2.0 + 1e-3; e < 8.0 && !pole; e += 1e-3) {
      const auto cur = char_residual(Branch::MinusExp, e, q, {});
      if ((prev.residual < 0) != (cur.residual < 0) && prev.det_sign == cur.det_sign)
        pole = std::make_pair(e - 1e-3, e);
      prev = cur;
    }
    REQUIRE(pole.has_value());
    CHECK_THROWS_AS(refine_root(Branch::MinusExp, *pole, q, {}, 1e-10), BracketInvalid);
  }
  SUBCASE("same-sign bracket is rejected") {
    CHECK_THROWS_AS(refine_root(Branch::MinusExp, {-4.0, -3.0}, p, {}, 1e-10), BracketInvalid);
  }
}

TEST_CASE("series solution") {
  const ModelParams p(2.0, 2.0, 0.2);
  const auto spec = find_roots(Branch::MinusExp, p, -3.0, 4.0, 1e-3);
  REQUIRE_FALSE(spec.roots.empty());
  for (const auto& r : spec.roots) {
    const auto sol = series_solution(Branch::MinusExp, r.energy, p, 80);
    CHECK(residual(sol.coefficients) <= 1e-10);
    CHECK(sol.convergence.converged);
    CHECK(sol.exp_sign == -1.0);
  }
  SUBCASE("too few terms is flagged, not fatal") {
    const ModelParams q(2.0, 3.0, 0.8);
    const auto s = find_roots(Branch::MinusExp, q, -5.0, 0.0, 1e-3);
    REQUIRE_FALSE(s.roots.empty());
    SeriesOptions so;
    so.xi_radius = 40.0;
    const auto sol = series_solution(Branch::MinusExp, s.roots.front().energy, q, 5, so);
    CHECK_FALSE(sol.convergence.converged);
  }
  SUBCASE("zero drive is rejected") {
    CHECK_THROWS_AS(series_solution(Branch::MinusExp, 0.5, ModelParams(0.0, 0.2, 0.2), 10),
                    InvalidArgument);
  }
}

TEST_CASE("Fock expansion") {
  SUBCASE("no displacement, single term") {
    const ModelParams p(2.0, 0.0, 0.0);
    SeriesSolution sol{Branch::MinusExp, 1.0, p, {{1.0}, Branch::MinusExp, 1.0, p},
                       {3.0}, {4.0}, -1.0, {}};
    const auto f = to_fock(sol, 8);
    CHECK(std::abs(f.up[0] - Complex(0.6, 0.0)) < 1e-15);
    CHECK(std::abs(f.down[0] - Complex(0.8, 0.0)) < 1e-15);
    for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(f.up[k]) + std::abs(f.down[k]) == 0.0);
  }
  SUBCASE("exponential prefactor gives a coherent state") {
    const ModelParams p(2.0, 0.0, 0.2);  // g = 0.1
    const auto column = displacement_matrix(p.g(), 60).col(0);
    for (double s : {-1.0, 1.0}) {
      const Branch b = s < 0 ? Branch::MinusExp : Branch::PlusExp;
      SeriesSolution sol{b, 1.0, p, {{1.0}, b, 1.0, p}, {1.0}, {0.0}, s, {}};
      const auto f = to_fock(sol, 40);
      for (std::size_t k = 0; k < 10; ++k) {
        const double expected = std::pow(s, static_cast<double>(k)) * std::abs(column(k));
        CHECK(f.up[k].real() == doctest::Approx(expected).epsilon(1e-12));
      }
      CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("excessive truncation is reported") {
    const ModelParams p(2.0, 0.0, 3.0);
    SeriesSolution sol{Branch::MinusExp, 1.0, p, {{1.0}, Branch::MinusExp, 1.0, p},
                       {1.0}, {0.0}, -1.0, {}};
    CHECK_THROWS_AS(to_fock(sol, 4), TailMassExceeded);
  }
}

TEST_CASE("frame transforms") {
  SUBCASE("resonant decoupled states map to (1, +-1)") {
    const ModelParams p(2.0, 0.0, 0.0);
    for (int sign : {1, -1}) {
      const auto v = special_case_eigenvector(2.0, 0.0, sign);
      FockSpinor t;
      t.up.assign(10, Complex{});
      t.down.assign(10, Complex{});
      t.up[3] = v.a;
      t.down[3] = v.b;
      const auto o = to_original_frame(t, p, 10);
      CHECK(std::abs(o.up[3]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
      CHECK(std::abs(o.down[3] - static_cast<double>(sign) * o.up[3]) < 1e-12);
    }
  }
  SUBCASE("decoupled transform matches the closed-form components") {
    const ModelParams p(0.7, 2.4, 0.0);
    for (int sign : {1, -1}) {
      const auto v = special_case_eigenvector(p.omega(), p.epsilon(), sign);
      FockSpinor t;
      t.up.assign(6, Complex{});
      t.down.assign(6, Complex{});
      t.up[0] = v.a;
      t.down[0] = v.b;
      const auto o = to_original_frame(t, p, 6);
      const double norm = std::hypot(v.original_up, v.original_down);
      CHECK(o.up[0].real() == doctest::Approx(v.original_up / norm).epsilon(1e-12));
      CHECK(o.down[0].real() == doctest::Approx(v.original_down / norm).epsilon(1e-12));
    }
  }
  SUBCASE("U then U^dag is the identity on interior support") {
    const ModelParams p(2.0, 0.2, 0.4);
    FockSpinor s;
    s.up.assign(80, Complex{});
    s.down.assign(80, Complex{});
    for (std::size_t k = 0; k < 20; ++k) {
      s.up[k] = Complex(std::sin(1.0 + k), std::cos(2.0 * k));
      s.down[k] = Complex(std::cos(0.5 * k), -std::sin(3.0 + k));
    }
    const double n0 = s.norm();
    for (auto& x : s.up) x /= n0;
    for (auto& x : s.down) x /= n0;
    const auto back = to_transformed_frame(to_original_frame(s, p, 80), p, 80);
    for (std::size_t k = 0; k < 80; ++k) {
      CHECK(std::abs(back.up[k] - s.up[k]) < 1e-10);
      CHECK(std::abs(back.down[k] - s.down[k]) < 1e-10);
    }
  }
  SUBCASE("oversized spinors are rejected") {
    FockSpinor s;
    s.up.assign(12, Complex{1.0, 0.0});
    s.down.assign(12, Complex{});
    CHECK_THROWS_AS(to_original_frame(s, ModelParams(2.0, 0.0, 0.2), 10), InvalidArgument);
  }
}

TEST_CASE("eigen residual") {
  const ModelParams p(2.0, 0.2, 0.2);
  const std::size_t n_max = 200;
  const auto h = build_transformed_hamiltonian(p, n_max);
  const auto ho = build_original_hamiltonian(p, n_max);

  SUBCASE("oracle eigenvector") {
    const auto oracle = oracle_diagonalize(p, n_max, true);
    const Eigen::VectorXcd v = oracle.eigenvectors.col(0).cast<Complex>();
    CHECK(eigen_residual(from_vector(v, oracle.eigenvalues[0]), h, oracle.eigenvalues[0]) <= 1e-10);
  }
  SUBCASE("continued-fraction eigenvectors in both frames") {
    for (Branch b : {Branch::MinusExp, Branch::PlusExp}) {
      const auto spec = find_roots(b, p, -2.0, 8.0, 1e-3);
      for (const auto& r : spec.roots) {
        const auto t = to_fock(series_solution(b, r.energy, p, 150), n_max);
        CHECK(eigen_residual(t, h, r.energy) <= 1e-6);
        CHECK(eigen_residual(to_original_frame(t, p, n_max), ho, r.energy) <= 1e-6);
      }
    }
  }
  SUBCASE("wrong energy") {
    const auto spec = find_roots(Branch::MinusExp, p, -2.0, 0.0, 1e-3);
    REQUIRE_FALSE(spec.roots.empty());
    const double e = spec.roots.front().energy;
    const auto t = to_fock(series_solution(Branch::MinusExp, e, p, 150), n_max);
    CHECK(eigen_residual(t, h, e + 0.1) >= 0.05);
  }
  SUBCASE("dimension mismatch") {
    FockSpinor s;
    s.up.assign(10, Complex{1.0, 0.0});
    s.down.assign(10, Complex{});
    CHECK_THROWS_AS(eigen_residual(s, h, 0.0), InvalidArgument);
  }
}

TEST_CASE("series at a lattice energy") {
  // With delta = 0 and E = 3, alpha_2 and gamma_4 vanish and the recurrence
  // splits into blocks {0, 1, 2}, {3} and {4, ...}.
  const ModelParams base(1.0, 0.0, 0.4);
  const auto omegas = solve_omega_roots_for_test(base);
  REQUIRE(omegas.size() >= 2);
  bool saw_lower = false, saw_upper = false;
  for (double omega : omegas) {
    const ModelParams p(omega, 0.0, 0.4);
    const auto sol = series_solution(Branch::MinusExp, 3.0, p, 150);
    const auto& c = sol.coefficients.c;
    if (c[0] != 0.0) {
      saw_lower = true;
      for (std::size_t n = 4; n < c.size(); ++n) CHECK(c[n] == 0.0);
    } else {
      saw_upper = true;
      CHECK(c[1] == 0.0);
      CHECK(c[2] == 0.0);
      CHECK(c[4] == 1.0);
    }
    CHECK(sol.convergence.converged);
    const auto t = to_fock(sol, 200);
    CHECK(eigen_residual(t, build_transformed_hamiltonian(p, 200), 3.0) <= 1e-8);
  }
  CHECK(saw_lower);
  CHECK(saw_upper);
}
