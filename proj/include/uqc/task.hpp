/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_TASK_HPP
#define UQC_TASK_HPP

#include <optional>
#include <string>

namespace uqc {

enum class TaskKind { inversion, transposition, conjugation, iteration };

enum class Subgroup { full, so, diag, tensor };

// Built-in transformation, optionally restricted to a subgroup promise.
struct TaskSpec {
  TaskKind kind = TaskKind::inversion;
  int iteration_n = 1;    // order of the iteration task
  Subgroup subgroup = Subgroup::full;
  int tensor_copies = 2;  // for Subgroup::tensor: the full space is C^{d^copies}
};

const char* to_string(TaskKind kind);
const char* to_string(Subgroup sub);

// Canonical name: "inversion", "iteration:3", "so_inversion",
// "diag_inversion", "tensor2_inversion", ...
std::string task_name(const TaskSpec& task);

// Parses names produced by task_name plus bare built-in names.
std::optional<TaskSpec> parse_task_name(const std::string& name);

}  // namespace uqc

#endif
