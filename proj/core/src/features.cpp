// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/features.hpp"

namespace picosvm {

textproc::TokenSequence analyze(std::string_view text, const textproc::Stoplist& stoplist) {
  return textproc::remove_stopwords(textproc::tokenize(text), stoplist);
}

vectorizer::Vocabulary fit_vocabulary(std::span<const textproc::TokenSequence> sentences,
                                      const FeatureConfig& config,
                                      const textproc::Stoplist& stoplist) {
  return vectorizer::fit(sentences, config.range,
                         {.min_df = config.min_df,
                          .smooth_idf = config.smooth_idf,
                          .stoplist_id = stoplist.id()});
}

std::vector<vectorizer::SparseVector> vectorize_all(
    std::span<const textproc::TokenSequence> sentences, const vectorizer::Vocabulary& vocab,
    const FeatureConfig& config) {
  std::vector<vectorizer::SparseVector> out;
  out.reserve(sentences.size());
  for (const auto& tokens : sentences) {
    out.push_back(vectorizer::transform(textproc::ngrams(tokens, vocab.range()), vocab,
                                        config.l2_normalize));
  }
  return out;
}

}  // namespace picosvm
