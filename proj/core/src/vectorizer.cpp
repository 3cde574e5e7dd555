// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "picosvm/errors.hpp"

namespace picosvm::vectorizer {

Vocabulary::Vocabulary(std::vector<VocabEntry> entries, std::size_t d_total,
                       textproc::NGramRange range, bool smooth_idf, std::string stoplist_id)
    : entries_(std::move(entries)),
      d_total_(d_total),
      range_(range),
      smooth_idf_(smooth_idf),
      stoplist_id_(std::move(stoplist_id)) {
  lookup_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && !(entries_[i - 1].ngram < entries_[i].ngram)) {
      throw ValidationError("vocabulary entries must be sorted and unique near '" +
                            entries_[i].ngram + "'");
    }
    lookup_.emplace(entries_[i].ngram, static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& ngram) const {
  const auto it = lookup_.find(ngram);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Vocabulary& a, const Vocabulary& b) {
  if (a.d_total_ != b.d_total_ || a.range_ != b.range_ || a.smooth_idf_ != b.smooth_idf_ ||
      a.stoplist_id_ != b.stoplist_id_ || a.entries_.size() != b.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.ngram != y.ngram || x.df != y.df || x.idf != y.idf) return false;
  }
  return true;
}

double idf_value(std::size_t d_total, std::size_t df, bool smooth) {
  const double denominator = static_cast<double>(df) + (smooth ? 1.0 : 0.0);
  return std::log(static_cast<double>(d_total) / denominator);
}

double SparseVector::squared_norm() const noexcept {
  double sum = 0.0;
  for (const auto& c : components) sum += c.value * c.value;
  return sum;
}

Vocabulary fit(std::span<const textproc::TokenSequence> sentences, textproc::NGramRange range,
               const FitOptions& options) {
  if (sentences.empty()) throw ValidationError("cannot fit a vocabulary on zero sentences");
  if (options.min_df == 0) throw ValidationError("min_df must be at least 1");

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& tokens : sentences) {
    // bag keys are distinct, so each sentence counts once per n-gram
    for (auto& [gram, count] : textproc::ngrams(tokens, range).counts) ++df[gram];
  }

  std::vector<VocabEntry> entries;
  entries.reserve(df.size());
  for (auto& [gram, count] : df) {
    if (count >= options.min_df) entries.push_back(VocabEntry{gram, count, 0.0});
  }
  std::sort(entries.begin(), entries.end(),
            [](const VocabEntry& a, const VocabEntry& b) { return a.ngram < b.ngram; });
  for (auto& entry : entries) entry.idf = idf_value(sentences.size(), entry.df, options.smooth_idf);
  return Vocabulary(std::move(entries), sentences.size(), range, options.smooth_idf,
                    options.stoplist_id);
}

std::map<std::string, double, std::less<>> term_frequencies(const textproc::NGramBag& bag) {
  std::map<std::string, double, std::less<>> tf;
  const auto total = static_cast<double>(bag.total());
  for (const auto& [gram, count] : bag.counts) tf.emplace(gram, static_cast<double>(count) / total);
  return tf;
}

SparseVector transform(const textproc::NGramBag& bag, const Vocabulary& vocab, bool l2_normalize) {
  if (bag.range != vocab.range()) {
    throw ContractError("n-gram range " + bag.range.to_string() +
                        " does not match vocabulary range " + vocab.range().to_string());
  }
  SparseVector out;
  out.dim = vocab.size();
  const auto total = static_cast<double>(bag.total());
  for (const auto& [gram, count] : bag.counts) {
    const auto index = vocab.index_of(gram);
    if (!index) continue;
    const double weight = (static_cast<double>(count) / total) * vocab.entries()[*index].idf;
    if (weight != 0.0) out.components.push_back({*index, weight});
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  if (l2_normalize && !out.components.empty()) {
    const double norm = std::sqrt(out.squared_norm());
    for (auto& c : out.components) c.value /= norm;
  }
  return out;
}

void export_idf_table(const Vocabulary& vocab, std::ostream& out) {
  const auto precision = out.precision(17);
  for (const auto& entry : vocab.entries()) out << entry.ngram << '\t' << entry.idf << '\n';
  out.precision(precision);
}

}  // namespace picosvm::vectorizer
