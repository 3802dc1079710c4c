#include "ramancf/model.hpp"

#include <cmath>

#include "ramancf/errors.hpp"

namespace ramancf {

ModelParams::ModelParams(double omega, double delta, double eta)
    : omega_(omega), delta_(delta), eta_(eta) {
  if (!std::isfinite(omega) || !std::isfinite(delta) || !std::isfinite(eta)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (omega < 0.0) throw InvalidArgument("omega must be non-negative");
  if (eta < 0.0) throw InvalidArgument("eta must be non-negative");
}

ModelParams derive_params(double omega, double delta, double eta) {
  return ModelParams(omega, delta, eta);
}

namespace {

void require_n_max(std::size_t n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
}

}  // namespace

RealFockSpinMatrix build_transformed_hamiltonian(const ModelParams& params, std::size_t n_max,
                                                 bool include_constant) {
  require_n_max(n_max);
  const double half_omega = params.omega() / 2.0;
  const double g = params.g();
  const double eps = params.epsilon();
  const double shift = include_constant ? g * g : 0.0;

  RealFockSpinMatrix h;
  h.dim_fock = n_max;
  h.entries = Eigen::MatrixXd::Zero(2 * n_max, 2 * n_max);
  auto& m = h.entries;
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto dn = basis_index(n, Spin::down);
    const auto up = basis_index(n, Spin::up);
    m(dn, dn) = static_cast<double>(n) - half_omega + shift;
    m(up, up) = static_cast<double>(n) + half_omega + shift;
    m(dn, up) = m(up, dn) = eps;
    if (n + 1 < n_max) {
      const double v = g * std::sqrt(static_cast<double>(n + 1));
      const auto dn1 = basis_index(n + 1, Spin::down);
      const auto up1 = basis_index(n + 1, Spin::up);
      m(dn, up1) = m(up1, dn) = v;
      m(up, dn1) = m(dn1, up) = v;
    }
  }
  return h;
}

ComplexFockSpinMatrix build_original_hamiltonian(const ModelParams& params, std::size_t n_max) {
  require_n_max(n_max);
  const Eigen::MatrixXcd kick = displacement_matrix(params.eta(), n_max);
  const double half_omega = params.omega() / 2.0;
  const double half_delta = params.delta() / 2.0;

  ComplexFockSpinMatrix h;
  h.dim_fock = n_max;
  h.entries = Eigen::MatrixXcd::Zero(2 * n_max, 2 * n_max);
  auto& m = h.entries;
  for (std::size_t i = 0; i < n_max; ++i) {
    const auto up_i = basis_index(i, Spin::up);
    const auto dn_i = basis_index(i, Spin::down);
    m(up_i, up_i) = static_cast<double>(i) + half_delta;
    m(dn_i, dn_i) = static_cast<double>(i) - half_delta;
    for (std::size_t j = 0; j < n_max; ++j) {
      const auto dn_j = basis_index(j, Spin::down);
      const auto up_j = basis_index(j, Spin::up);
      // s+ e^{i eta x}: |up><down| block; its adjoint fills |down><up|.
      m(up_i, dn_j) = half_omega * kick(i, j);
      m(dn_i, up_j) = half_omega * std::conj(kick(j, i));
    }
  }
  return h;
}

}  // namespace ramancf
