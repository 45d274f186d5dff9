/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace uqc {

void require_square(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
}

void require_hermitian(const Matrix& m, double tol, const std::string& what) {
  require_square(m, what);
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << what << ": not Hermitian, ||M - M^dagger||_F = " << defect
        << " exceeds tolerance " << tol;
    throw InvalidInput(msg.str());
  }
  if (!m.allFinite()) throw InvalidInput(what + ": non-finite entries");
}

void require_unitary(const Matrix& m, double tol, const std::string& what) {
  require_square(m, what);
  const double defect = unitarity_defect(m);
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << what << ": not unitary, ||U^dagger U - I||_F = " << defect
        << " exceeds tolerance " << tol;
    throw InvalidInput(msg.str());
  }
}

EigResult eig_hermitian(const Matrix& h, double tol) {
  require_hermitian(h, tol, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eig_hermitian: eigensolver did not converge");
  }
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& x, int slot) {
  require_square(x, "partial_trace");
  const auto n = x.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n) throw InvalidInput("partial_trace: dimension is not a perfect square");
  if (slot != 1 && slot != 2) throw InvalidInput("partial_trace: slot must be 1 or 2");

  Matrix out = Matrix::Zero(d, d);
  if (slot == 2) {
    // keep slot 1:  out(i,j) = sum_k X[(i,k),(j,k)]
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) out(i, j) += x(i * d + k, j * d + k);
  } else {
    // keep slot 2:  out(k,l) = sum_i X[(i,k),(i,l)]
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index i = 0; i < d; ++i) out(k, l) += x(i * d + k, i * d + l);
  }
  return out;
}

Vector vectorize(const Matrix& a) {
  require_square(a, "vectorize");
  const auto d = a.rows();
  Vector v(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) v(j * d + k) = a(j, k);
  return v;
}

Matrix devectorize(const Vector& v) {
  const auto n = v.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n) throw InvalidInput("devectorize: length is not a perfect square");
  Matrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) a(j, k) = v(j * d + k);
  return a;
}

Matrix mat_log_unitary(const Matrix& u, double tol) {
  require_unitary(u, tol, "mat_log_unitary");
  const auto d = u.rows();

  // A unitary is normal, so its Schur form is diagonal up to rounding and the
  // Schur vectors are a genuinely orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) {
    throw NumericalFailure("mat_log_unitary: Schur decomposition failed");
  }
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();

  constexpr double kBranchMargin = 0.1;
  RealVector phases(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double theta = std::arg(t(j, j));
    if (std::abs(theta) > std::numbers::pi - kBranchMargin) {
      std::ostringstream msg;
      msg << "mat_log_unitary: eigenphase " << theta
          << " too close to the -pi branch cut";
      throw InvalidInput(msg.str());
    }
    phases(j) = theta;
  }

  Matrix k = q * phases.cast<Complex>().asDiagonal() * q.adjoint();
  k = hermitian_part(k);
  const double residual = (expi_hermitian(k) - u).norm();
  if (residual > 1e-9) {
    std::ostringstream msg;
    msg << "mat_log_unitary: reconstruction residual " << residual << " exceeds 1e-9";
    throw NumericalFailure(msg.str());
  }
  return k;
}

Matrix expi_hermitian(const Matrix& h) {
  require_hermitian(h, 1e-6, "expi_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  const auto d = h.rows();
  Vector phases(d);
  for (Eigen::Index j = 0; j < d; ++j)
    phases(j) = std::exp(Complex(0.0, solver.eigenvalues()(j)));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace {

// Portable Gaussian stream: Box-Muller over the raw 64-bit engine output, so
// samples do not depend on the standard library's std::normal_distribution.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

Matrix haar_unitary(int d, std::uint64_t seed) {
  if (d < 2) throw InvalidInput("haar_unitary: dimension must be at least 2");

  GaussianStream gauss(seed);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss.next(), gauss.next());

  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();

  // Fix the phase ambiguity of QR so the distribution is Haar on U(d).
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const Complex phase = (std::abs(rjj) > 0.0) ? rjj / std::abs(rjj) : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }

  // Divide out a d-th root of the determinant to land in SU(d).
  const Complex det = q.determinant();
  const double theta = std::arg(det);
  q *= std::exp(Complex(0.0, -theta / d));
  return q;
}

Matrix swap_operator(int d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) s(j * d + k, k * d + j) = 1.0;
  return s;
}

Matrix sym_projector(int d) {
  return 0.5 * (Matrix::Identity(d * d, d * d) + swap_operator(d));
}

Matrix antisym_projector(int d) {
  return 0.5 * (Matrix::Identity(d * d, d * d) - swap_operator(d));
}

Matrix max_entangled_dyad(int d) {
  const Vector v = vectorize(Matrix::Identity(d, d));
  return v * v.adjoint();
}

double norm(const Matrix& x, NormKind kind) {
  if (!x.allFinite()) throw InvalidInput("norm: non-finite entries");
  if (kind == NormKind::frobenius) return x.norm();
  Eigen::JacobiSVD<Matrix> svd(x);
  const RealVector& sigma = svd.singularValues();
  switch (kind) {
    case NormKind::operator_norm:
      return sigma.size() > 0 ? sigma(0) : 0.0;
    case NormKind::trace:
      return sigma.sum();
    default:
      return x.norm();
  }
}

}  // namespace uqc
