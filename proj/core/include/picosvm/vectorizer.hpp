// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "picosvm/textproc.hpp"

namespace picosvm::vectorizer {

struct VocabEntry {
  std::string ngram;
  std::size_t df = 0;
  double idf = 0.0;
};

/// n-gram dictionary fitted on training sentences. Index i is the i-th
/// n-gram in lexicographic order; idf = ln(|D| / (df + 1)) when smoothing
/// is on (the default) and ln(|D| / df) otherwise.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Entries must be sorted by n-gram and unique; the idf values are taken as given.
  Vocabulary(std::vector<VocabEntry> entries, std::size_t d_total, textproc::NGramRange range,
             bool smooth_idf, std::string stoplist_id);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<VocabEntry>& entries() const noexcept { return entries_; }
  std::optional<std::uint32_t> index_of(const std::string& ngram) const;

  std::size_t d_total() const noexcept { return d_total_; }
  textproc::NGramRange range() const noexcept { return range_; }
  bool smooth_idf() const noexcept { return smooth_idf_; }
  const std::string& stoplist_id() const noexcept { return stoplist_id_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b);

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
  std::size_t d_total_ = 0;
  textproc::NGramRange range_;
  bool smooth_idf_ = true;
  std::string stoplist_id_;
};

double idf_value(std::size_t d_total, std::size_t df, bool smooth);

/// Sparse vector as (index, weight) pairs in increasing index order.
/// No stored weight is exactly zero.
struct SparseVector {
  struct Component {
    std::uint32_t index = 0;
    double value = 0.0;
    friend bool operator==(const Component&, const Component&) = default;
  };

  std::vector<Component> components;
  std::size_t dim = 0;

  bool empty() const noexcept { return components.empty(); }
  double squared_norm() const noexcept;
};

struct FitOptions {
  std::size_t min_df = 1;
  bool smooth_idf = true;
  std::string stoplist_id;
};

/// Fits the vocabulary over already stop-word-filtered token sequences.
/// Throws ValidationError on empty input or min_df == 0.
Vocabulary fit(std::span<const textproc::TokenSequence> sentences, textproc::NGramRange range,
               const FitOptions& options = {});

/// tf(g) = count(g) / total count in the bag.
std::map<std::string, double, std::less<>> term_frequencies(const textproc::NGramBag& bag);

/// TF-IDF vector of a bag. Out-of-vocabulary n-grams add nothing but still
/// count towards the tf denominator. With `l2_normalize`, a non-empty result
/// has unit Euclidean norm. Throws ContractError if the bag's n-gram range
/// differs from the vocabulary's.
SparseVector transform(const textproc::NGramBag& bag, const Vocabulary& vocab,
                       bool l2_normalize = true);

/// Two-column "ngram<TAB>idf" listing for inspection.
void export_idf_table(const Vocabulary& vocab, std::ostream& out);

}  // namespace picosvm::vectorizer
