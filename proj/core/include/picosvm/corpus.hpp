// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "picosvm/labels.hpp"
#include "picosvm/textproc.hpp"

namespace picosvm::corpus {

/// One abstract sentence with its structural label.
struct LabeledSentence {
  std::string pmid;
  std::string heading;
  Label label = Label::P;
  std::string text;
};

/// Ordered sentences plus where they came from. Immutable once ingested.
struct Corpus {
  std::vector<LabeledSentence> sentences;
  std::string source;

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }
};

/// A sentence binarized for one task: y == 1 iff the sentence label is the task.
/// `ordinal` is the sentence's position in the corpus it was binarized from; the
/// referenced sentence must outlive the instance.
struct TaskInstance {
  std::reference_wrapper<const LabeledSentence> sentence;
  std::size_t ordinal = 0;
  Task task = Task::P;
  int y = 0;

  const std::string& text() const noexcept { return sentence.get().text; }
};

struct SplitRatios {
  double train = 0.8;
  double test = 0.1;
  double dev = 0.1;
};

struct DataSplit {
  std::vector<TaskInstance> train;
  std::vector<TaskInstance> test;
  std::vector<TaskInstance> dev;
  std::uint64_t seed = 0;
  SplitRatios ratios;

  /// Stable digest of split membership (task, part, ordinal).
  std::uint64_t fingerprint() const;
};

struct LabelCount {
  std::size_t sentences = 0;
  std::size_t abstracts = 0;

  friend bool operator==(const LabelCount&, const LabelCount&) = default;
};

/// Per-label sentence and distinct-pmid counts, indexed by index_of(Label).
using CorpusStats = std::array<LabelCount, 7>;

/// Header row of the canonical corpus file.
inline constexpr std::string_view kCorpusHeader = "pmid\theading\tlabel\ttext";

/// Reads the canonical four-column TSV corpus.
/// Throws IoError, ParseError (wrong field count, bad header) or
/// ValidationError (unknown label token, blank text).
Corpus ingest(const std::filesystem::path& path);
Corpus ingest(std::istream& in, std::string source);

Corpus filter_pio(const Corpus& corpus);

/// Throws ContractError if the corpus holds a label outside {P, I, O}.
std::vector<TaskInstance> binarize(const Corpus& corpus, Task task);

/// Per-class seeded shuffle, then a cut by cumulative ratio using
/// largest-remainder rounding, so every class/part count is within one
/// instance of ratio * class_total.
DataSplit stratified_split(std::span<const TaskInstance> instances, SplitRatios ratios,
                           std::uint64_t seed);

CorpusStats corpus_stats(const Corpus& corpus);

/// Unigram frequencies over tokenized, stop-word-filtered sentences with the
/// given label. Sorted by descending count, ties lexicographic.
std::vector<std::pair<std::string, std::size_t>> top_k_words(const Corpus& corpus, Label label,
                                                              std::size_t k,
                                                              const textproc::Stoplist& stoplist);

/// FNV-1a digest over every field of every sentence, in order.
std::uint64_t content_hash(const Corpus& corpus);

}  // namespace picosvm::corpus
