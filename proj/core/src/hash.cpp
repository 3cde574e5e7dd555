// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/hash.hpp"

namespace picosvm {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
}

Fnv1a& Fnv1a::update(std::string_view bytes) noexcept {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= kFnvPrime;
  }
  return *this;
}

Fnv1a& Fnv1a::update(std::uint64_t value) noexcept {
  // little-endian byte order regardless of host
  for (int shift = 0; shift < 64; shift += 8) {
    state_ ^= (value >> shift) & 0xffU;
    state_ *= kFnvPrime;
  }
  return *this;
}

std::string Fnv1a::hex() const { return to_hex(state_); }

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xfU];
    value >>= 4;
  }
  return out;
}

}  // namespace picosvm
