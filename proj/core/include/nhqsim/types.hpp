#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace nhqsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// Hard cap on system size; dense 2^n x 2^n storage throughout.
inline constexpr int kMaxQubits = 10;

// Thrown when an eigensolver or matrix function fails to converge or
// produces non-finite output. Distinct from invalid_argument so callers
// can map it to a "numerical failure" exit path.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhqsim
