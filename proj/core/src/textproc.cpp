// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/textproc.hpp"

#include <charconv>

#include "picosvm/errors.hpp"

namespace picosvm::textproc {

namespace {

bool is_token_char(unsigned char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char ascii_lower(unsigned char c) noexcept {
  return static_cast<char>((c >= 'A' && c <= 'Z') ? c + ('a' - 'A') : c);
}

int parse_order(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("invalid n-gram range '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

NGramRange NGramRange::make(int min, int max) {
  if (min < 1 || max < min || max > 3) {
    throw ValidationError("n-gram range " + std::to_string(min) + "-" + std::to_string(max) +
                          " outside 1 <= min <= max <= 3");
  }
  return NGramRange{min, max};
}

NGramRange NGramRange::parse(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    const int n = parse_order(text, text);
    return make(n, n);
  }
  return make(parse_order(text.substr(0, dash), text), parse_order(text.substr(dash + 1), text));
}

std::string NGramRange::to_string() const {
  if (min == max) return std::to_string(min);
  return std::to_string(min) + "-" + std::to_string(max);
}

std::size_t NGramBag::total() const noexcept {
  std::size_t sum = 0;
  for (const auto& [gram, count] : counts) sum += count;
  return sum;
}

TokenSequence tokenize(std::string_view text) {
  TokenSequence tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_token_char(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenSequence remove_stopwords(const TokenSequence& tokens, const Stoplist& stoplist) {
  TokenSequence kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stoplist.contains(token)) kept.push_back(token);
  }
  return kept;
}

NGramBag ngrams(const TokenSequence& tokens, NGramRange range) {
  NGramBag bag;
  bag.range = range;
  for (int n = range.min; n <= range.max; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (tokens.size() < width) break;
    for (std::size_t start = 0; start + width <= tokens.size(); ++start) {
      std::string gram = tokens[start];
      for (std::size_t k = 1; k < width; ++k) {
        gram.push_back(' ');
        gram += tokens[start + k];
      }
      ++bag.counts[std::move(gram)];
    }
  }
  return bag;
}

}  // namespace picosvm::textproc
