#include <cmath>
#include <numbers>

#include "ramancf/errors.hpp"
#include "ramancf/spectrum.hpp"

namespace ramancf {

double FockSpinor::norm() const {
  double s = 0.0;
  for (std::size_t k = 0; k < up.size(); ++k) s += std::norm(up[k]) + std::norm(down[k]);
  return std::sqrt(s);
}

namespace {

// Coefficients of e^{s g alpha} p(alpha + g) on Fock states, for k < out_dim.
// p is given by its coefficients in xi = alpha + g.
std::vector<double> series_to_fock(std::vector<double> coef, double g, double s,
                                   std::size_t out_dim) {
  const std::size_t len = coef.size();
  // Taylor shift p(xi) -> p(alpha + g), expressed in powers of alpha.
  if (g != 0.0) {
    for (std::size_t i = 0; i + 1 < len; ++i) {
      for (std::size_t j = len - 1; j-- > i;) coef[j] += g * coef[j + 1];
    }
  }
  // hat_i = a_i sqrt(i!): amplitude of |i> before the exponential factor.
  std::vector<double> hat(out_dim, 0.0);
  for (std::size_t i = 0; i < std::min(len, out_dim); ++i) {
    hat[i] = coef[i] * std::exp(0.5 * std::lgamma(static_cast<double>(i) + 1.0));
  }
  if (g == 0.0) return hat;

  // Multiply by e^{s g alpha} = sum_j (s g)^j alpha^j / j!:
  //   psi_k = sum_j hat_{k-j} (s g)^j sqrt(k! / (k-j)!) / j!.
  const double sg = s * g;
  const double log_g = std::log(std::abs(g));
  std::vector<double> out(out_dim, 0.0);
  for (std::size_t k = 0; k < out_dim; ++k) {
    const double lk = std::lgamma(static_cast<double>(k) + 1.0);
    double acc = hat[k];
    for (std::size_t j = 1; j <= k; ++j) {
      if (hat[k - j] == 0.0) continue;
      const double jd = static_cast<double>(j);
      const double log_w = jd * log_g +
                           0.5 * (lk - std::lgamma(static_cast<double>(k - j) + 1.0)) -
                           std::lgamma(jd + 1.0);
      const double sign = (sg < 0.0 && (j % 2 == 1)) ? -1.0 : 1.0;
      acc += hat[k - j] * sign * std::exp(log_w);
    }
    out[k] = acc;
  }
  return out;
}

FockSpinor truncate_and_normalize(const Eigen::VectorXcd& up, const Eigen::VectorXcd& down,
                                  std::size_t n_max, double energy, double tail_tol) {
  const double total = up.squaredNorm() + down.squaredNorm();
  if (total == 0.0) throw Error("spinor has zero norm");
  const auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(n_max, up.size()));
  const double kept = up.head(keep).squaredNorm() + down.head(keep).squaredNorm();
  const double tail = std::max(0.0, (total - kept) / total);
  if (tail > tail_tol) throw TailMassExceeded(tail);

  FockSpinor out;
  out.energy = energy;
  out.tail_mass = tail;
  out.up.assign(n_max, Complex{});
  out.down.assign(n_max, Complex{});
  const double scale = 1.0 / std::sqrt(kept);
  for (Eigen::Index k = 0; k < keep; ++k) {
    out.up[static_cast<std::size_t>(k)] = up(k) * scale;
    out.down[static_cast<std::size_t>(k)] = down(k) * scale;
  }
  return out;
}

std::size_t working_dim(std::size_t n_max) { return n_max + std::max<std::size_t>(40, n_max / 2); }

}  // namespace

FockSpinor to_fock(const SeriesSolution& sol, std::size_t n_max, double tail_tol) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  const std::size_t work = working_dim(n_max);
  const double g = sol.params.g();
  const auto up = series_to_fock(sol.upper, g, sol.exp_sign, work);
  const auto down = series_to_fock(sol.lower, g, sol.exp_sign, work);
  Eigen::VectorXcd u(static_cast<Eigen::Index>(work));
  Eigen::VectorXcd d(static_cast<Eigen::Index>(work));
  for (std::size_t k = 0; k < work; ++k) {
    u(static_cast<Eigen::Index>(k)) = up[k];
    d(static_cast<Eigen::Index>(k)) = down[k];
  }
  return truncate_and_normalize(u, d, n_max, sol.energy, tail_tol);
}

namespace {

Eigen::VectorXcd padded(const std::vector<Complex>& v, std::size_t dim) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < std::min(dim, v.size()); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

// Diagonal of e^{i sign pi a^dag a / 2}: i^k for sign = +1, (-i)^k for sign = -1.
Eigen::VectorXcd quarter_turn_phases(std::size_t dim, int sign) {
  static const Complex cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::VectorXcd p(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t idx = sign > 0 ? k % 4 : (4 - k % 4) % 4;
    p(static_cast<Eigen::Index>(k)) = cycle[idx];
  }
  return p;
}

void require_fits(const FockSpinor& spinor, std::size_t n_max) {
  if (spinor.size() > n_max) throw InvalidArgument("spinor is larger than n_max");
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
}

}  // namespace

FockSpinor to_original_frame(const FockSpinor& spinor, const ModelParams& params,
                             std::size_t n_max, double tail_tol) {
  require_fits(spinor, n_max);
  const std::size_t work = working_dim(n_max);
  const Eigen::MatrixXcd disp = displacement_matrix(params.eta() / 2.0, work);
  const Eigen::VectorXcd phase = quarter_turn_phases(work, -1);
  const Eigen::VectorXcd up = phase.cwiseProduct(padded(spinor.up, work));
  const Eigen::VectorXcd down = phase.cwiseProduct(padded(spinor.down, work));
  const double r = std::numbers::sqrt2 / 2.0;
  const Eigen::VectorXcd orig_up = r * (disp * (up - down));
  const Eigen::VectorXcd orig_down = r * (disp.adjoint() * (up + down));
  return truncate_and_normalize(orig_up, orig_down, n_max, spinor.energy, tail_tol);
}

FockSpinor to_transformed_frame(const FockSpinor& spinor, const ModelParams& params,
                                std::size_t n_max, double tail_tol) {
  require_fits(spinor, n_max);
  const std::size_t work = working_dim(n_max);
  const Eigen::MatrixXcd disp = displacement_matrix(params.eta() / 2.0, work);
  const Eigen::VectorXcd phase = quarter_turn_phases(work, +1);
  const Eigen::VectorXcd up = padded(spinor.up, work);
  const Eigen::VectorXcd down = padded(spinor.down, work);
  const double r = std::numbers::sqrt2 / 2.0;
  const Eigen::VectorXcd t_up =
      r * phase.cwiseProduct(disp.adjoint() * up + disp * down);
  const Eigen::VectorXcd t_down =
      r * phase.cwiseProduct(-(disp.adjoint() * up) + disp * down);
  return truncate_and_normalize(t_up, t_down, n_max, spinor.energy, tail_tol);
}

Eigen::VectorXcd to_vector(const FockSpinor& spinor) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(2 * spinor.size()));
  for (std::size_t n = 0; n < spinor.size(); ++n) {
    v(static_cast<Eigen::Index>(basis_index(n, Spin::up))) = spinor.up[n];
    v(static_cast<Eigen::Index>(basis_index(n, Spin::down))) = spinor.down[n];
  }
  return v;
}

FockSpinor from_vector(const Eigen::VectorXcd& v, double energy) {
  if (v.size() % 2 != 0) throw InvalidArgument("spin-Fock vector must have even length");
  FockSpinor s;
  s.energy = energy;
  const auto n_max = static_cast<std::size_t>(v.size() / 2);
  s.up.resize(n_max);
  s.down.resize(n_max);
  for (std::size_t n = 0; n < n_max; ++n) {
    s.up[n] = v(static_cast<Eigen::Index>(basis_index(n, Spin::up)));
    s.down[n] = v(static_cast<Eigen::Index>(basis_index(n, Spin::down)));
  }
  return s;
}

template <class Scalar>
double eigen_residual(const FockSpinor& spinor, const FockSpinMatrix<Scalar>& h, double energy) {
  if (spinor.size() != h.dim_fock || spinor.down.size() != h.dim_fock) {
    throw InvalidArgument("spinor and matrix dimensions differ");
  }
  const Eigen::VectorXcd v = to_vector(spinor);
  const double nv = v.norm();
  if (nv == 0.0) throw InvalidArgument("spinor has zero norm");
  const Eigen::VectorXcd r = h.entries.template cast<Complex>() * v - energy * v;
  return r.norm() / nv;
}

template double eigen_residual(const FockSpinor&, const FockSpinMatrix<double>&, double);
template double eigen_residual(const FockSpinor&, const FockSpinMatrix<Complex>&, double);

}  // namespace ramancf
