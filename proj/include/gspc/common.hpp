#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gspc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Base of every error the library throws. `exit_code` is what the CLI
/// returns when the error escapes a subcommand.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Malformed files, bad dimensions, out-of-range indices.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what, 2) {}
};

/// A numerical assumption of the model does not hold for this input
/// (repeated eigenvalues, singular block, leakage above band tolerance...).
class AssumptionError : public Error {
 public:
  explicit AssumptionError(const std::string& what) : Error(what, 3) {}
};

/// A post-condition that should hold by construction was violated.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(what, 4) {}
};

/// Default numerical tolerances. Every operation that needs one takes it
/// from here unless the caller overrides it.
struct Tolerances {
  double eig = 1e-8;
  /// Relative to max|lambda|; the absolute gap threshold is
  /// distinct_rel * max|lambda|.
  double distinct_rel = 1e-6;
  double charpoly = 1e-6;
  double conv = 1e-7;
  /// Relative to the largest singular value.
  double rank_rel = 1e-8;
  double comp = 1e-6;
  double band = 1e-8;
  double node_snap = 1e-12;
  double trim = 1e-12;
};

}  // namespace gspc
