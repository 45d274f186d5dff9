/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_TESTS_SUPPORT_HPP
#define UQC_TESTS_SUPPORT_HPP

#include <json.hpp>
#include <random>
#include <string>

#include "uqc/linalg.hpp"
#include "uqc/types.hpp"

namespace uqc::test {

// Seeded generators so every run sees the same cases.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  Matrix complex_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(), gauss());
    return m;
  }
  Matrix hermitian(int d) {
    const Matrix a = complex_matrix(d, d);
    return hermitian_part(a);
  }
  Matrix traceless_hermitian(int d) { return traceless_part(hermitian(d)); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Small structural validator covering the subset of JSON Schema the shipped
// schemas use: type, properties, required, items, enum.
inline bool matches_type(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

inline bool validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string* error, const std::string& path = "$") {
  if (schema.contains("type")) {
    const auto& type = schema.at("type");
    bool ok = false;
    if (type.is_array()) {
      for (const auto& t : type) ok = ok || matches_type(value, t.get<std::string>());
    } else {
      ok = matches_type(value, type.get<std::string>());
    }
    if (!ok) {
      if (error) *error = path + ": type mismatch";
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& candidate : schema.at("enum")) ok = ok || (candidate == value);
    if (!ok) {
      if (error) *error = path + ": not in enum";
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required")) {
        if (!value.contains(key.get<std::string>())) {
          if (error) *error = path + ": missing required key " + key.get<std::string>();
          return false;
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, subschema] : schema.at("properties").items()) {
        if (value.contains(key)) {
          if (!validate_schema(value.at(key), subschema, error, path + "." + key)) return false;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    int idx = 0;
    for (const auto& element : value) {
      if (!validate_schema(element, schema.at("items"), error,
                           path + "[" + std::to_string(idx) + "]")) {
        return false;
      }
      ++idx;
    }
  }
  return true;
}

inline std::string source_dir() {
#ifdef UQC_SOURCE_DIR
  return UQC_SOURCE_DIR;
#else
  return ".";
#endif
}

}  // namespace uqc::test

#endif
