/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/bases.hpp"

#include <cmath>

#include "uqc/linalg.hpp"

namespace uqc {

const char* to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::su_gellmann: return "su_gellmann";
    case BasisTag::su_pauli: return "su_pauli";
    case BasisTag::so: return "so";
    case BasisTag::so_complement: return "so_complement";
    case BasisTag::diag: return "diag";
    case BasisTag::diag_complement: return "diag_complement";
    case BasisTag::tensor_sub: return "tensor_sub";
    case BasisTag::tensor_complement: return "tensor_complement";
  }
  return "unknown";
}

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix unit_matrix(int d, int j, int k) {
  Matrix e = Matrix::Zero(d, d);
  e(j, k) = 1.0;
  return e;
}

// (E_jk + E_kj)/sqrt2  for j < k
Matrix symmetric_element(int d, int j, int k) {
  Matrix m = unit_matrix(d, j, k) + unit_matrix(d, k, j);
  return m / std::sqrt(2.0);
}

// -i on the upper entry (j, k), +i on (k, j); at d = 2 this is Y/sqrt2.
Matrix antisymmetric_element(int d, int j, int k) {
  Matrix m = -kI * unit_matrix(d, j, k) + kI * unit_matrix(d, k, j);
  return m / std::sqrt(2.0);
}

// diag(1,...,1,-l,0,...,0)/sqrt(l(l+1)) with l leading ones.
Matrix diagonal_element(int d, int l) {
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < l; ++j) m(j, j) = 1.0;
  m(l, l) = -static_cast<double>(l);
  return m / std::sqrt(static_cast<double>(l) * (l + 1));
}

}  // namespace

OperatorBasis gellmann_basis(int d) {
  if (d < 2) throw InvalidInput("gellmann_basis: dimension must be at least 2");
  OperatorBasis basis;
  basis.dim = d;
  basis.tag = BasisTag::su_gellmann;
  basis.elements.reserve(d * d - 1);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) basis.elements.push_back(symmetric_element(d, j, k));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) basis.elements.push_back(antisymmetric_element(d, j, k));
  for (int l = 1; l < d; ++l) basis.elements.push_back(diagonal_element(d, l));
  return basis;
}

OperatorBasis pauli_basis(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 4) {
    throw InvalidInput("pauli_basis: qubit count must be in [1, 4]");
  }
  Matrix paulis[4];
  paulis[0] = Matrix::Identity(2, 2);
  paulis[1] = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  paulis[2] = (Matrix(2, 2) << 0, -kI, kI, 0).finished();
  paulis[3] = (Matrix(2, 2) << 1, 0, 0, -1).finished();

  const int total = 1 << (2 * n_qubits);  // 4^n strings including identity
  const double scale = 1.0 / std::sqrt(static_cast<double>(1 << n_qubits));

  OperatorBasis basis;
  basis.dim = 1 << n_qubits;
  basis.tag = BasisTag::su_pauli;
  basis.elements.reserve(total - 1);
  for (int code = 1; code < total; ++code) {
    Matrix m = Matrix::Identity(1, 1);
    for (int leg = n_qubits - 1; leg >= 0; --leg) {
      const int digit = (code >> (2 * leg)) & 3;
      m = kron(m, paulis[digit]);
    }
    basis.elements.push_back(scale * m);
  }
  return basis;
}

std::pair<OperatorBasis, OperatorBasis> subalgebra_bases(int d, SubalgebraKind kind) {
  if (d < 2) throw InvalidInput("subalgebra_bases: dimension must be at least 2");

  OperatorBasis sub, complement;
  sub.dim = complement.dim = d;

  if (kind == SubalgebraKind::so) {
    sub.tag = BasisTag::so;
    complement.tag = BasisTag::so_complement;
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) sub.elements.push_back(antisymmetric_element(d, j, k));
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        complement.elements.push_back(symmetric_element(d, j, k));
    for (int l = 1; l < d; ++l) complement.elements.push_back(diagonal_element(d, l));
  } else {
    sub.tag = BasisTag::diag;
    complement.tag = BasisTag::diag_complement;
    for (int l = 1; l < d; ++l) sub.elements.push_back(diagonal_element(d, l));
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        complement.elements.push_back(symmetric_element(d, j, k));
        complement.elements.push_back(antisymmetric_element(d, j, k));
      }
  }
  return {std::move(sub), std::move(complement)};
}

TensorEmbedding tensor_embedding(int d, int n) {
  if (d < 2 || n < 2) throw InvalidInput("tensor_embedding: need d >= 2 and n >= 2");
  double total_dim = std::pow(static_cast<double>(d), n);
  if (total_dim > 16.5) throw InvalidInput("tensor_embedding: product dimension exceeds 16");
  const int big = static_cast<int>(std::llround(total_dim));

  // Per-leg alphabet: normalized identity followed by the su(d) generators.
  const OperatorBasis local = gellmann_basis(d);
  std::vector<Matrix> alphabet;
  alphabet.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (const Matrix& g : local.elements) alphabet.push_back(g);
  const int letters = static_cast<int>(alphabet.size());  // d^2

  TensorEmbedding emb;
  emb.local_dim = d;
  emb.copies = n;
  emb.sub.dim = emb.complement.dim = big;
  emb.sub.tag = BasisTag::tensor_sub;
  emb.complement.tag = BasisTag::tensor_complement;

  std::vector<int> digits(n, 0);
  const long total_strings = static_cast<long>(std::pow(static_cast<double>(letters), n));
  for (long code = 1; code < total_strings; ++code) {
    long rest = code;
    int nontrivial = 0;
    for (int leg = n - 1; leg >= 0; --leg) {
      digits[leg] = static_cast<int>(rest % letters);
      rest /= letters;
      if (digits[leg] != 0) ++nontrivial;
    }
    Matrix m = Matrix::Identity(1, 1);
    for (int leg = 0; leg < n; ++leg) m = kron(m, alphabet[digits[leg]]);
    if (nontrivial == 1) {
      emb.sub.elements.push_back(std::move(m));
    } else {
      emb.complement.elements.push_back(std::move(m));
    }
  }
  return emb;
}

double gram_defect(const std::vector<Matrix>& elements) {
  const int n = static_cast<int>(elements.size());
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const Complex inner = (elements[a].adjoint() * elements[b]).trace();
      const double target = (a == b) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner - target));
    }
  return worst;
}

}  // namespace uqc
