#include <cmath>

#include "ramancf/errors.hpp"
#include "ramancf/model.hpp"

namespace ramancf {

Eigen::MatrixXd position_operator(std::size_t n_max) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_max, n_max);
  for (std::size_t n = 0; n + 1 < n_max; ++n) {
    x(n, n + 1) = x(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  }
  return x;
}

Eigen::MatrixXcd displacement_matrix(double beta_coeff, std::size_t n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  const auto dim = static_cast<Eigen::Index>(n_max);
  if (beta_coeff == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);

  const Eigen::MatrixXcd generator =
      Complex(0.0, beta_coeff) * position_operator(n_max).cast<Complex>();
  // Column sums of a + a^dag are bounded by sqrt(n) + sqrt(n - 1).
  const double norm = std::abs(beta_coeff) * 2.0 * std::sqrt(static_cast<double>(n_max));
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Eigen::MatrixXcd scaled = generator / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 1; k < 40; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double assoc_laguerre(std::size_t n, double a, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 + a - x) * cur - (kd + a) * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::MatrixXcd displacement_matrix_laguerre(double beta_coeff, std::size_t n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  const auto dim = static_cast<Eigen::Index>(n_max);
  if (beta_coeff == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);

  // exp(i b (a + a^dag)) = D(beta) with beta = i b. For m >= n,
  //   <m|D|n> = sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2)
  // and <n|D|m> = sqrt(n!/m!) (-conj(beta))^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2).
  const double x = beta_coeff * beta_coeff;
  const double log_b = std::log(std::abs(beta_coeff));
  const Complex beta(0.0, beta_coeff);
  const Complex unit_lower = beta / std::abs(beta_coeff);
  const Complex unit_upper = -std::conj(beta) / std::abs(beta_coeff);

  Eigen::MatrixXcd d(dim, dim);
  for (std::size_t n = 0; n < n_max; ++n) {
    for (std::size_t m = n; m < n_max; ++m) {
      const auto k = static_cast<int>(m - n);
      const double log_mag = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) + k * log_b -
                             0.5 * x;
      const double mag = std::exp(log_mag) * assoc_laguerre(n, k, x);
      d(m, n) = mag * std::pow(unit_lower, k);
      d(n, m) = mag * std::pow(unit_upper, k);
    }
  }
  return d;
}

}  // namespace ramancf
