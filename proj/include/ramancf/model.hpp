#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace ramancf {

using Complex = std::complex<double>;

/// Physical inputs of the driven trapped-ion model, all in units of the trap
/// frequency. The transformed-frame coupling g = eta/2 and bias
/// epsilon = -delta/2 are derived on access, never stored.
class ModelParams {
 public:
  /// Throws InvalidArgument for negative omega or eta, or non-finite inputs.
  ModelParams(double omega, double delta, double eta);

  double omega() const noexcept { return omega_; }
  double delta() const noexcept { return delta_; }
  double eta() const noexcept { return eta_; }
  double g() const noexcept { return eta_ / 2.0; }
  double epsilon() const noexcept { return -delta_ / 2.0; }

  ModelParams with_omega(double omega) const { return {omega, delta_, eta_}; }
  ModelParams with_delta(double delta) const { return {omega_, delta, eta_}; }
  ModelParams with_eta(double eta) const { return {omega_, delta_, eta}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double omega_;
  double delta_;
  double eta_;
};

ModelParams derive_params(double omega, double delta, double eta);

// Spin (x) Fock product basis. Every matrix and spinor in the library uses
// index = 2n + s with s = 0 for spin down and s = 1 for spin up.
enum class Spin : int { down = 0, up = 1 };

constexpr std::size_t basis_index(std::size_t n, Spin s) noexcept {
  return 2 * n + static_cast<std::size_t>(s);
}

template <class Scalar>
struct FockSpinMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  std::size_t dim_fock = 0;
  Matrix entries;

  std::size_t size() const noexcept { return 2 * dim_fock; }
};

using RealFockSpinMatrix = FockSpinMatrix<double>;
using ComplexFockSpinMatrix = FockSpinMatrix<Complex>;

/// (Omega/2) sz + a^dag a + g (a^dag + a) sx + epsilon sx + g^2, truncated to
/// n_max oscillator levels. With include_constant = false the g^2 shift is
/// omitted.
RealFockSpinMatrix build_transformed_hamiltonian(const ModelParams& params, std::size_t n_max,
                                                 bool include_constant = true);

/// (Delta/2) sz + a^dag a + (Omega/2)(s+ e^{i eta x} + s- e^{-i eta x}) with
/// x = a^dag + a, truncated to n_max oscillator levels.
ComplexFockSpinMatrix build_original_hamiltonian(const ModelParams& params, std::size_t n_max);

/// Truncated matrix of a + a^dag.
Eigen::MatrixXd position_operator(std::size_t n_max);

/// exp(i b (a + a^dag)) on n_max Fock levels. Computed by scaling and
/// squaring the Taylor series of the truncated generator, so the result is
/// exactly unitary; entries near the truncation edge differ from the
/// infinite-dimensional operator.
Eigen::MatrixXcd displacement_matrix(double beta_coeff, std::size_t n_max);

/// Same operator from the closed-form associated-Laguerre matrix elements of
/// the untruncated displacement operator D(i b).
Eigen::MatrixXcd displacement_matrix_laguerre(double beta_coeff, std::size_t n_max);

/// Generalized Laguerre polynomial L_n^{(a)}(x) by upward recurrence.
double assoc_laguerre(std::size_t n, double a, double x);

template <class Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace ramancf
