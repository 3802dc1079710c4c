#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ramancf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied values was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// alpha_n vanished while running the recurrence forward; the energy sits on
/// (or numerically at) the lattice E = epsilon + 1 + n.
class AlphaVanishes : public Error {
 public:
  explicit AlphaVanishes(std::size_t level)
      : Error("recurrence coefficient alpha_" + std::to_string(level) + " vanishes"),
        level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class PoleEncountered : public Error {
 public:
  explicit PoleEncountered(std::size_t level)
      : Error("continued fraction denominator at level " + std::to_string(level) +
              " is below the pole guard"),
        level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class BracketInvalid : public Error {
 public:
  using Error::Error;
};

class TailMassExceeded : public Error {
 public:
  explicit TailMassExceeded(double mass)
      : Error("discarded amplitude mass " + std::to_string(mass) + " exceeds tolerance"),
        mass_(mass) {}
  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

class EigenNotConverged : public Error {
 public:
  explicit EigenNotConverged(int sweeps)
      : Error("Jacobi eigensolver did not converge in " + std::to_string(sweeps) + " sweeps"),
        sweeps_(sweeps) {}
  int sweeps() const noexcept { return sweeps_; }

 private:
  int sweeps_;
};

class ContinuationLost : public Error {
 public:
  ContinuationLost(std::size_t series, std::size_t grid_index)
      : Error("continuation lost in series " + std::to_string(series) + " at grid index " +
              std::to_string(grid_index)),
        series_(series),
        grid_index_(grid_index) {}
  std::size_t series() const noexcept { return series_; }
  std::size_t grid_index() const noexcept { return grid_index_; }

 private:
  std::size_t series_;
  std::size_t grid_index_;
};

}  // namespace ramancf
