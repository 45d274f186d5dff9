/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_LINALG_HPP
#define UQC_LINALG_HPP

#include <cstdint>
#include <utility>

#include "uqc/types.hpp"

namespace uqc {

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // columns are the corresponding eigenvectors, unitary
};

// Eigendecomposition of a Hermitian operator, H = V diag(values) V^dagger.
EigResult eig_hermitian(const Matrix& h, double tol = kExternalTol);

double min_eigenvalue(const Matrix& h);

// Kronecker product, first factor on the first (slower) index.
Matrix kron(const Matrix& a, const Matrix& b);

// Traces out one slot of an operator on C^d (x) C^d.  slot = 1 removes the
// first factor, slot = 2 the second; the result is the d x d marginal on the
// remaining slot.
Matrix partial_trace(const Matrix& x, int slot);

// Row-stacking vectorization |A>> = sum_{jk} A_{jk} |j>(x)|k>, fixed so that
// |I>><<I| = sum_{jk} |jj><kk| and <<A|B>> = tr(A^dagger B).
Vector vectorize(const Matrix& a);
Matrix devectorize(const Vector& v);

// Hermitian K with U = e^{iK}, principal branch.  Rejects inputs with an
// eigenphase within 0.1 of -pi, where the branch is ambiguous.
Matrix mat_log_unitary(const Matrix& u, double tol = kExternalTol);

// e^{iH} for Hermitian H.
Matrix expi_hermitian(const Matrix& h);

// Deterministic Haar-distributed element of SU(d): complex Gaussian matrix,
// QR with phase fix, then a global phase to reach unit determinant.
Matrix haar_unitary(int d, std::uint64_t seed);

// Exchange operator on C^d (x) C^d and friends.
Matrix swap_operator(int d);
Matrix sym_projector(int d);
Matrix antisym_projector(int d);
// Unnormalized |I>><<I| = sum_{jk} |jj><kk|; squared norm of |I>> is d.
Matrix max_entangled_dyad(int d);

enum class NormKind { operator_norm, frobenius, trace };

// Schatten infinity / 2 / 1 norms via singular values.
double norm(const Matrix& x, NormKind kind);

inline double operator_norm(const Matrix& x) { return norm(x, NormKind::operator_norm); }
inline double frobenius_norm(const Matrix& x) { return norm(x, NormKind::frobenius); }
inline double trace_norm(const Matrix& x) { return norm(x, NormKind::trace); }

}  // namespace uqc

#endif
