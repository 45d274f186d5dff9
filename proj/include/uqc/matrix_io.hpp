/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_MATRIX_IO_HPP
#define UQC_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "uqc/types.hpp"

namespace uqc {

enum class MatrixFileCheck {
  none,             // shape and finiteness only (debug dumps)
  unitary,          // U^dagger U = I within 1e-8
  special_unitary,  // additionally det = 1 within 1e-8
};

// Shared matrix file format: {"d": n, "entries": [[[re, im], ...], ...]},
// row-major.
Matrix load_matrix(const std::string& path, MatrixFileCheck check);
Matrix read_matrix(std::istream& in, MatrixFileCheck check, const std::string& what);

void save_matrix(const std::string& path, const Matrix& m);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace uqc

#endif
