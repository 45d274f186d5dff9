/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_BASES_HPP
#define UQC_BASES_HPP

#include <utility>
#include <vector>

#include "uqc/types.hpp"

namespace uqc {

enum class BasisTag {
  su_gellmann,
  su_pauli,
  so,
  so_complement,
  diag,
  diag_complement,
  tensor_sub,
  tensor_complement,
};

const char* to_string(BasisTag tag);

// Ordered set of traceless Hermitian operators, orthonormal under the
// Hilbert-Schmidt inner product tr(A^dagger B).
struct OperatorBasis {
  int dim = 0;  // operators act on C^dim
  BasisTag tag = BasisTag::su_gellmann;
  std::vector<Matrix> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

// Generalized Gell-Mann basis of the traceless Hermitian operators on C^d,
// ordered as: symmetric pairs (E_jk + E_kj)/sqrt2 for j < k, antisymmetric
// pairs with -i on the upper entry, then the d-1 diagonal elements.
OperatorBasis gellmann_basis(int d);

// Normalized nontrivial Pauli strings on n qubits, lexicographic in
// {I < X < Y < Z} per leg.
OperatorBasis pauli_basis(int n_qubits);

enum class SubalgebraKind { so, diag };

// Splits the Gell-Mann basis into the generators of the requested subalgebra
// and its Hilbert-Schmidt orthogonal complement inside the traceless
// Hermitian operators.
std::pair<OperatorBasis, OperatorBasis> subalgebra_bases(int d, SubalgebraKind kind);

struct TensorEmbedding {
  OperatorBasis sub;         // single-leg generators on C^{d^n}
  OperatorBasis complement;  // product strings with >= 2 nontrivial legs
  int local_dim = 0;
  int copies = 0;
};

// Generators of the n-fold tensor-power subgroup inside the full group on
// C^{d^n}, plus the complementary product-basis strings.
TensorEmbedding tensor_embedding(int d, int n);

// Gram-matrix deviation from the identity over a set of operators; used by
// validity checks and tests.
double gram_defect(const std::vector<Matrix>& elements);

}  // namespace uqc

#endif
