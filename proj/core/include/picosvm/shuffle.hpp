// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace picosvm {

/// Fisher-Yates shuffle driven by mt19937_64. The engine's output sequence is
/// fixed by the standard, unlike std::shuffle or the distributions, so the
/// permutation for a given seed is the same on every toolchain.
template <typename T>
void portable_shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace picosvm
