#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "ramancf/errors.hpp"

namespace ramancf {

struct JacobiOptions {
  int max_sweeps = 30;
  /// Converged once the off-diagonal Frobenius norm falls below
  /// tolerance * Frobenius norm of the input.
  double tolerance = 1e-15;
  bool want_vectors = true;
};

template <class Scalar>
struct HermitianEigen {
  std::vector<double> values;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns match values
  int sweeps = 0;
};

namespace detail {

inline double abs2(double v) { return v * v; }
inline double abs2(const std::complex<double>& v) { return std::norm(v); }
inline double conj(double v) { return v; }
inline std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }

}  // namespace detail

/// Cyclic Jacobi diagonalization of a real symmetric or complex Hermitian
/// matrix. Each rotation first removes the phase of the pivot, then applies
/// the classical real rotation, so the same code serves both scalar types.
/// Throws EigenNotConverged after max_sweeps.
template <class Scalar>
HermitianEigen<Scalar> jacobi_eigen(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
                                    const JacobiOptions& options = {}) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidArgument("jacobi_eigen needs a square matrix");

  Matrix v;
  if (options.want_vectors) v = Matrix::Identity(n, n);

  const double total = a.squaredNorm();
  const double threshold = options.tolerance * options.tolerance * total;
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += 2.0 * detail::abs2(a(p, q));
    return s;
  };

  HermitianEigen<Scalar> out;
  int sweep = 0;
  for (; sweep <= options.max_sweeps; ++sweep) {
    if (off_norm() <= threshold) break;
    if (sweep == options.max_sweeps) throw EigenNotConverged(options.max_sweeps);

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::sqrt(detail::abs2(apq));
        if (mag == 0.0) continue;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        // Skip pivots already negligible against both diagonal entries.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        const Scalar phase = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Scalar phase_conj = detail::conj(phase);

        // A <- A J with J = diag(1, conj(phase)) * R.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * phase_conj * akq;
          a(k, q) = s * akp + c * phase_conj * akq;
        }
        // J^dag only mixes rows p and q, so off the (p, q) block the new rows
        // follow from the new columns by Hermiticity.
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(p, k) = detail::conj(a(k, p));
          a(q, k) = detail::conj(a(k, q));
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(app - t * mag);
        a(q, q) = Scalar(aqq + t * mag);
        if (options.want_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Scalar vkp = v(k, p);
            const Scalar vkq = v(k, q);
            v(k, p) = c * vkp - s * phase_conj * vkq;
            v(k, q) = s * vkp + c * phase_conj * vkq;
          }
        }
      }
    }
  }
  out.sweeps = sweep;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  out.values.reserve(order.size());
  for (auto i : order) out.values.push_back(std::real(a(i, i)));
  if (options.want_vectors) {
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace ramancf
