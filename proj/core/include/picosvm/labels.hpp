// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace picosvm {

/// Structural sentence label of a structured abstract: participants,
/// intervention, outcome, aim, methods, results, conclusions.
enum class Label : unsigned char { P, I, O, A, M, R, C };

inline constexpr std::array<Label, 7> kAllLabels = {Label::P, Label::I, Label::O, Label::A,
                                                    Label::M, Label::R, Label::C};

/// One of the three binary classification tasks.
enum class Task : unsigned char { P, I, O };

inline constexpr std::array<Task, 3> kAllTasks = {Task::P, Task::I, Task::O};

char to_char(Label label) noexcept;
char to_char(Task task) noexcept;
std::optional<Label> parse_label(std::string_view token) noexcept;
std::optional<Task> parse_task(std::string_view token) noexcept;

constexpr Label to_label(Task task) noexcept {
  switch (task) {
    case Task::P: return Label::P;
    case Task::I: return Label::I;
    case Task::O: return Label::O;
  }
  return Label::P;
}

constexpr std::optional<Task> to_task(Label label) noexcept {
  switch (label) {
    case Label::P: return Task::P;
    case Label::I: return Task::I;
    case Label::O: return Task::O;
    default: return std::nullopt;
  }
}

constexpr std::size_t index_of(Task task) noexcept { return static_cast<std::size_t>(task); }
constexpr std::size_t index_of(Label label) noexcept { return static_cast<std::size_t>(label); }

}  // namespace picosvm
