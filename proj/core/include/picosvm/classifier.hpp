// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string_view>

#include "picosvm/features.hpp"
#include "picosvm/labels.hpp"
#include "picosvm/svm.hpp"
#include "picosvm/textproc.hpp"
#include "picosvm/vectorizer.hpp"

namespace picosvm {

/// A trained binary classifier for one task together with everything needed
/// to featurize raw text the way it was featurized at training time.
struct TaskClassifier {
  Task task = Task::P;
  FeatureConfig features;
  textproc::Stoplist stoplist;
  vectorizer::Vocabulary vocab;
  svm::LinearModel model;

  vectorizer::SparseVector vectorize(std::string_view text) const;
  double score(std::string_view text) const;
  int predict(std::string_view text) const;
};

/// Version written into the artifact header and required on load.
inline constexpr int kModelFormatVersion = 1;

/// Writes the versioned text artifact. Doubles use shortest round-trip
/// formatting, so a loaded model reproduces decisions bit for bit.
void save_model(const TaskClassifier& classifier, std::ostream& out);
void save_model(const TaskClassifier& classifier, const std::filesystem::path& path);

/// Throws VersionError for another format version, ParseError for malformed
/// content and IoError if the file cannot be read.
TaskClassifier load_model(std::istream& in);
TaskClassifier load_model(const std::filesystem::path& path);

}  // namespace picosvm
