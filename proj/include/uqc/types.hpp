/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_TYPES_HPP
#define UQC_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace uqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Tolerance for operators constructed by our own arithmetic.
inline constexpr double kHermTol = 1e-12;
// Tolerance for external (file / user supplied) inputs, which are typically
// decimal-truncated.
inline constexpr double kExternalTol = 1e-8;
inline constexpr double kUnitaryTol = 1e-8;

// Thrown when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical routine cannot meet its accuracy contract.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

inline double unitarity_defect(const Matrix& m) {
  return (m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).norm();
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Removes the trace component: X - (tr X / d) I.
inline Matrix traceless_part(const Matrix& m) {
  const auto d = m.rows();
  return m - (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
}

void require_square(const Matrix& m, const std::string& what);
void require_hermitian(const Matrix& m, double tol, const std::string& what);
void require_unitary(const Matrix& m, double tol, const std::string& what);

}  // namespace uqc

#endif
