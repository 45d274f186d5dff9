/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "uqc/linalg.hpp"

namespace uqc {

namespace {

void run_checks(const Matrix& m, MatrixFileCheck check, const std::string& what) {
  if (!m.allFinite()) throw InvalidInput(what + ": non-finite entries");
  if (check == MatrixFileCheck::none) return;
  require_unitary(m, kExternalTol, what);
  if (check == MatrixFileCheck::special_unitary) {
    const double det_defect = std::abs(m.determinant() - Complex(1.0, 0.0));
    if (det_defect > kExternalTol) {
      std::ostringstream msg;
      msg << what << ": determinant differs from 1 by " << det_defect;
      throw InvalidInput(msg.str());
    }
  }
}

}  // namespace

Matrix read_matrix(std::istream& in, MatrixFileCheck check, const std::string& what) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(what + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries")) {
    throw InvalidInput(what + ": expected an object with keys \"d\" and \"entries\"");
  }
  const int d = doc.at("d").get<int>();
  if (d < 1) throw InvalidInput(what + ": dimension must be positive");
  const auto& entries = doc.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != d) {
    throw InvalidInput(what + ": entries must hold d rows");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = entries.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw InvalidInput(what + ": row " + std::to_string(i) + " must hold d entries");
    }
    for (int j = 0; j < d; ++j) {
      const auto& cell = row.at(j);
      if (!cell.is_array() || cell.size() != 2) {
        throw InvalidInput(what + ": entries must be [re, im] pairs");
      }
      m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  run_checks(m, check, what);
  return m;
}

Matrix load_matrix(const std::string& path, MatrixFileCheck check) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  return read_matrix(in, check, "matrix file '" + path + "'");
}

void write_matrix(std::ostream& out, const Matrix& m) {
  nlohmann::ordered_json doc;
  doc["d"] = m.rows();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  write_matrix(out, m);
}

}  // namespace uqc
