#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ramancf/errors.hpp"
#include "ramancf/model.hpp"

using namespace ramancf;

TEST_CASE("derive_params halves eta and negates half the detuning") {
  const auto p = derive_params(2.0, 2.0, 0.2);
  CHECK(p.g() == 0.1);
  CHECK(p.epsilon() == -1.0);

  const auto z = derive_params(0.0, 0.0, 0.0);
  CHECK(z.g() == 0.0);
  CHECK(z.epsilon() == 0.0);

  const auto q = derive_params(6.0, 3.0, 0.8);
  CHECK(q.g() == 0.4);
  CHECK(q.epsilon() == -1.5);
}

TEST_CASE("derive_params rejects invalid inputs") {
  CHECK_THROWS_AS(derive_params(-1.0, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(derive_params(1.0, 0.0, -0.1), InvalidArgument);
  CHECK_THROWS_AS(derive_params(NAN, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(derive_params(1.0, INFINITY, 0.1), InvalidArgument);
}

TEST_CASE("basis ordering is 2n + s") {
  CHECK(basis_index(0, Spin::down) == 0);
  CHECK(basis_index(0, Spin::up) == 1);
  CHECK(basis_index(3, Spin::down) == 6);
  CHECK(basis_index(3, Spin::up) == 7);
}

TEST_CASE("decoupled transformed Hamiltonian is diagonal") {
  const auto h = build_transformed_hamiltonian(ModelParams(2.0, 0.0, 0.0), 3);
  const Eigen::VectorXd expected = (Eigen::VectorXd(6) << -1, 1, 0, 2, 1, 3).finished();
  CHECK(h.entries.diagonal().isApprox(expected));
  Eigen::MatrixXd off = h.entries;
  off.diagonal().setZero();
  CHECK(off.isZero());
}

TEST_CASE("transformed Hamiltonian is exactly symmetric and rejects tiny truncations") {
  const auto h = build_transformed_hamiltonian(ModelParams(2.0, 0.2, 0.6), 40);
  CHECK((h.entries - h.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(build_transformed_hamiltonian(ModelParams(2.0, 0.2, 0.6), 1), InvalidArgument);
  CHECK_THROWS_AS(build_original_hamiltonian(ModelParams(2.0, 0.2, 0.6), 1), InvalidArgument);
}

TEST_CASE("decoupled spectrum is n +- sqrt(omega^2/4 + eps^2)") {
  const auto h = build_transformed_hamiltonian(ModelParams(2.0, 2.0, 0.0), 12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.entries);
  std::vector<double> expected;
  for (int n = 0; n < 12; ++n) {
    expected.push_back(n + std::sqrt(2.0));
    expected.push_back(n - std::sqrt(2.0));
  }
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 24; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("constant g^2 shifts every eigenvalue by exactly g^2") {
  const ModelParams p(2.0, 1.6, 0.6);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> with(build_transformed_hamiltonian(p, 60).entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> without(
      build_transformed_hamiltonian(p, 60, false).entries);
  const double g2 = p.g() * p.g();
  CHECK(((with.eigenvalues() - without.eigenvalues()).array() - g2).abs().maxCoeff() < 1e-12);
}

TEST_CASE("original Hamiltonian at eta = 0 is a spin block per level") {
  const auto h = build_original_hamiltonian(ModelParams(2.0, 0.4, 0.0), 5);
  CHECK(hermiticity_defect(h.entries) == 0.0);
  for (std::size_t n = 0; n < 5; ++n) {
    const auto u = basis_index(n, Spin::up), d = basis_index(n, Spin::down);
    CHECK(h.entries(u, u).real() == doctest::Approx(n + 0.2));
    CHECK(h.entries(d, d).real() == doctest::Approx(n - 0.2));
    CHECK(std::abs(h.entries(u, d) - Complex(1.0, 0.0)) < 1e-15);
  }
  Eigen::MatrixXcd off = h.entries;
  for (std::size_t n = 0; n < 5; ++n) {
    const auto u = basis_index(n, Spin::up), d = basis_index(n, Spin::down);
    off(u, u) = off(d, d) = off(u, d) = off(d, u) = 0.0;
  }
  CHECK(off.isZero());
}

TEST_CASE("original Hamiltonian is Hermitian") {
  const auto h = build_original_hamiltonian(ModelParams(4.0, 1.6, 0.8), 80);
  CHECK(hermiticity_defect(h.entries) < 1e-14);
}

TEST_CASE("displacement matrix") {
  SUBCASE("zero argument gives the identity") {
    CHECK(displacement_matrix(0.0, 10).isApprox(Eigen::MatrixXcd::Identity(10, 10)));
  }
  SUBCASE("vacuum element is exp(-b^2/2)") {
    const auto d = displacement_matrix(0.1, 50);
    CHECK(std::abs(d(0, 0) - Complex(0.995012479192682313, 0.0)) < 1e-14);
  }
  SUBCASE("interior columns are normalized") {
    const auto d = displacement_matrix(0.1, 200);
    for (int k = 0; k < 150; ++k) CHECK(d.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("exponential and Laguerre forms agree") {
    const auto e = displacement_matrix(0.4, 80);
    const auto l = displacement_matrix_laguerre(0.4, 80);
    CHECK((e - l).topLeftCorner(50, 50).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rejects tiny truncations") {
    CHECK_THROWS_AS(displacement_matrix(0.1, 1), InvalidArgument);
  }
}

TEST_CASE("associated Laguerre polynomials") {
  CHECK(assoc_laguerre(0, 2.0, 0.3) == 1.0);
  CHECK(assoc_laguerre(1, 2.0, 0.3) == doctest::Approx(2.7));
  // L_2^(1)(x) = (x^2 - 6x + 6) / 2
  CHECK(assoc_laguerre(2, 1.0, 0.5) == doctest::Approx((0.25 - 3.0 + 6.0) / 2.0));
}

TEST_CASE("both frames share the low spectrum") {
  const ModelParams p(2.0, 2.0, 0.2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> t(build_transformed_hamiltonian(p, 120).entries,
                                                   Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> o(build_original_hamiltonian(p, 120).entries,
                                                    Eigen::EigenvaluesOnly);
  CHECK((t.eigenvalues().head(20) - o.eigenvalues().head(20)).cwiseAbs().maxCoeff() < 1e-9);
}
