/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "uqc/task.hpp"

#include <cstdlib>

namespace uqc {

const char* to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::inversion: return "inversion";
    case TaskKind::transposition: return "transposition";
    case TaskKind::conjugation: return "conjugation";
    case TaskKind::iteration: return "iteration";
  }
  return "unknown";
}

const char* to_string(Subgroup sub) {
  switch (sub) {
    case Subgroup::full: return "full";
    case Subgroup::so: return "so";
    case Subgroup::diag: return "diag";
    case Subgroup::tensor: return "tensor";
  }
  return "unknown";
}

std::string task_name(const TaskSpec& task) {
  std::string base = to_string(task.kind);
  if (task.kind == TaskKind::iteration) base += ":" + std::to_string(task.iteration_n);
  switch (task.subgroup) {
    case Subgroup::full: return base;
    case Subgroup::so: return "so_" + base;
    case Subgroup::diag: return "diag_" + base;
    case Subgroup::tensor:
      return "tensor" + std::to_string(task.tensor_copies) + "_" + base;
  }
  return base;
}

std::optional<TaskSpec> parse_task_name(const std::string& name) {
  TaskSpec spec;
  std::string rest = name;

  if (rest.rfind("so_", 0) == 0) {
    spec.subgroup = Subgroup::so;
    rest = rest.substr(3);
  } else if (rest.rfind("diag_", 0) == 0) {
    spec.subgroup = Subgroup::diag;
    rest = rest.substr(5);
  } else if (rest.rfind("tensor", 0) == 0) {
    const auto sep = rest.find('_');
    if (sep == std::string::npos || sep <= 6) return std::nullopt;
    const std::string copies = rest.substr(6, sep - 6);
    char* end = nullptr;
    const long n = std::strtol(copies.c_str(), &end, 10);
    if (end == copies.c_str() || *end != '\0' || n < 2) return std::nullopt;
    spec.subgroup = Subgroup::tensor;
    spec.tensor_copies = static_cast<int>(n);
    rest = rest.substr(sep + 1);
  }

  std::string head = rest;
  const auto colon = rest.find(':');
  if (colon != std::string::npos) {
    head = rest.substr(0, colon);
    const std::string arg = rest.substr(colon + 1);
    char* end = nullptr;
    const long n = std::strtol(arg.c_str(), &end, 10);
    if (end == arg.c_str() || *end != '\0' || n < 1) return std::nullopt;
    spec.iteration_n = static_cast<int>(n);
  }

  if (head == "inversion") spec.kind = TaskKind::inversion;
  else if (head == "transposition") spec.kind = TaskKind::transposition;
  else if (head == "conjugation") spec.kind = TaskKind::conjugation;
  else if (head == "iteration") spec.kind = TaskKind::iteration;
  else return std::nullopt;

  if (spec.kind != TaskKind::iteration && colon != std::string::npos) return std::nullopt;
  return spec;
}

}  // namespace uqc
