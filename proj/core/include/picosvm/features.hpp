// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "picosvm/textproc.hpp"
#include "picosvm/vectorizer.hpp"

namespace picosvm {

/// Everything that turns raw sentence text into a TF-IDF vector.
struct FeatureConfig {
  textproc::NGramRange range{1, 2};
  bool l2_normalize = true;
  bool smooth_idf = true;
  std::size_t min_df = 1;
};

/// tokenize + remove_stopwords.
textproc::TokenSequence analyze(std::string_view text, const textproc::Stoplist& stoplist);

/// Fits a vocabulary on pre-analyzed training sentences.
vectorizer::Vocabulary fit_vocabulary(std::span<const textproc::TokenSequence> sentences,
                                      const FeatureConfig& config,
                                      const textproc::Stoplist& stoplist);

std::vector<vectorizer::SparseVector> vectorize_all(
    std::span<const textproc::TokenSequence> sentences, const vectorizer::Vocabulary& vocab,
    const FeatureConfig& config);

}  // namespace picosvm
