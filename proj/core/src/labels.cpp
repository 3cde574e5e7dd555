// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/labels.hpp"

namespace picosvm {

char to_char(Label label) noexcept { return "PIOAMRC"[index_of(label)]; }

char to_char(Task task) noexcept { return "PIO"[index_of(task)]; }

std::optional<Label> parse_label(std::string_view token) noexcept {
  if (token.size() != 1) return std::nullopt;
  for (Label label : kAllLabels) {
    if (to_char(label) == token.front()) return label;
  }
  return std::nullopt;
}

std::optional<Task> parse_task(std::string_view token) noexcept {
  auto label = parse_label(token);
  if (!label) return std::nullopt;
  return to_task(*label);
}

}  // namespace picosvm
