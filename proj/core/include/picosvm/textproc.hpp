// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace picosvm::textproc {

/// Lowercase, whitespace-free, non-empty tokens in sentence order.
using TokenSequence = std::vector<std::string>;

/// Inclusive n-gram length window, 1 <= min <= max <= 3.
struct NGramRange {
  int min = 1;
  int max = 2;

  /// Throws ValidationError outside the supported envelope.
  static NGramRange make(int min, int max);
  /// Parses "1", "2-3", ...
  static NGramRange parse(std::string_view text);

  std::string to_string() const;

  friend bool operator==(const NGramRange&, const NGramRange&) = default;
};

/// n-gram occurrence counts for one sentence. Keys are tokens joined by one space.
struct NGramBag {
  std::map<std::string, std::size_t, std::less<>> counts;
  NGramRange range;

  std::size_t total() const noexcept;
};

/// Fixed stop-word list. The id and content hash travel with trained models.
class Stoplist {
 public:
  Stoplist() = default;
  Stoplist(std::string id, std::vector<std::string> words);

  /// The bundled English list (core/data/stopwords_en.txt).
  static const Stoplist& english();
  /// One lowercase word per line; blank lines and surrounding whitespace ignored.
  static Stoplist load(const std::filesystem::path& path);

  bool contains(const std::string& word) const { return lookup_.contains(word); }
  bool contains(std::string_view word) const { return contains(std::string(word)); }
  const std::string& id() const noexcept { return id_; }
  /// Sorted, deduplicated words.
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::uint64_t content_hash() const noexcept { return hash_; }

 private:
  std::string id_;
  std::vector<std::string> words_;
  std::unordered_set<std::string> lookup_;
  std::uint64_t hash_ = 0;
};

/// Lowercases ASCII and splits on every maximal run of characters that are
/// neither letters nor digits. Bytes >= 0x80 are treated as letters so UTF-8
/// words stay whole.
TokenSequence tokenize(std::string_view text);

TokenSequence remove_stopwords(const TokenSequence& tokens, const Stoplist& stoplist);

NGramBag ngrams(const TokenSequence& tokens, NGramRange range);

}  // namespace picosvm::textproc
