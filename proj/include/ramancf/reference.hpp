#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ramancf/jacobi.hpp"
#include "ramancf/model.hpp"
#include "ramancf/spectrum.hpp"

namespace ramancf {

/// Decoupled-limit (g = 0) levels n + sqrt(Omega^2/4 + eps^2) and
/// n - sqrt(Omega^2/4 + eps^2), returned as (plus, minus).
std::pair<double, double> special_case_energies(std::size_t n, double omega, double epsilon);

/// Eigenvector of the decoupled transformed-frame block
/// (Omega/2) sz + eps sx at energy sign * sqrt(Omega^2/4 + eps^2).
struct SpecialEigenvector {
  /// Transformed-frame components (up, down), unnormalized:
  ///   A = 1 + sign (2/Omega) root - 2 eps/Omega,  B = 1 - sign (2/Omega) root + 2 eps/Omega.
  double a = 0.0;
  double b = 0.0;
  /// Original-frame (up, down) components after U^dag, up to the phase
  /// e^{-i n pi/2} and normalization:
  ///   (sign (2/Omega) root - 2 eps/Omega, 1) / sqrt(2).
  double original_up = 0.0;
  double original_down = 0.0;
};

/// Throws InvalidArgument for omega == 0 or sign not in {+1, -1}.
SpecialEigenvector special_case_eigenvector(double omega, double epsilon, int sign);

/// Rotating-wave levels for Omega = 2:
///   E_n^{+/-} = (2n+1)/4 + eta^2/4 +/- sqrt(4 eta^2 (n+1) + 1)/4,
/// returned as (plus, minus). Only defined for that drive strength.
std::pair<double, double> rwa_energies(std::size_t n, double eta);

struct OracleSpectrum {
  std::vector<double> eigenvalues;  // ascending
  /// Leading eigenvalues trusted against truncation: n_max / 4 of them.
  std::size_t interior_count = 0;
  std::size_t n_max = 0;
  ModelParams params;
  Eigen::MatrixXd eigenvectors;  // empty unless requested
  int sweeps = 0;

  std::vector<double> interior() const {
    return {eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(interior_count)};
  }
};

/// Dense Jacobi diagonalization of the transformed Hamiltonian. Requires
/// n_max >= 32.
OracleSpectrum oracle_diagonalize(const ModelParams& params, std::size_t n_max,
                                  bool want_vectors = false, const JacobiOptions& options = {});

struct MatchPair {
  double cf_root;
  double oracle_eigenvalue;
  double difference;
};

struct MatchReport {
  std::vector<MatchPair> pairs;
  std::vector<double> unmatched_cf;
  std::vector<double> unmatched_oracle_interior;

  double max_difference() const;
};

/// Greedy one-to-one pairing by increasing distance against the interior
/// oracle eigenvalues; pairs further apart than tol are left unmatched.
MatchReport match_roots(const std::vector<double>& cf_roots, const OracleSpectrum& oracle,
                        double tol);
MatchReport match_roots(const Spectrum& spectrum, const OracleSpectrum& oracle, double tol);

}  // namespace ramancf
