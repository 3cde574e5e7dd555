// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <algorithm>
#include <fstream>
#include <sstream>

#include "default_stoplist.hpp"
#include "picosvm/errors.hpp"
#include "picosvm/hash.hpp"
#include "picosvm/textproc.hpp"

namespace picosvm::textproc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> parse_words(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = trim(line);
    if (!word.empty()) words.emplace_back(word);
  }
  return words;
}

}  // namespace

Stoplist::Stoplist(std::string id, std::vector<std::string> words) : id_(std::move(id)) {
  for (const auto& word : words) {
    if (std::any_of(word.begin(), word.end(), [](unsigned char c) { return c >= 'A' && c <= 'Z'; })) {
      throw ValidationError("stop word '" + word + "' is not lowercase");
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  words_ = std::move(words);
  lookup_.insert(words_.begin(), words_.end());
  Fnv1a hash;
  for (const auto& word : words_) hash.update(word).update("\n");
  hash_ = hash.digest();
}

const Stoplist& Stoplist::english() {
  static const Stoplist kEnglish = [] {
    std::istringstream in{std::string(detail::kDefaultStopwords)};
    return Stoplist("en-v1", parse_words(in));
  }();
  return kEnglish;
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stop-word list " + path.string());
  return Stoplist(path.filename().string(), parse_words(in));
}

}  // namespace picosvm::textproc
