// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "picosvm/classifier.hpp"
#include "picosvm/corpus.hpp"

namespace picosvm {

/// Per-task penalty, indexed by index_of(Task). Defaults are P 1.0, I 1.0, O 0.6.
using TaskPenalties = std::array<double, 3>;
inline constexpr TaskPenalties kDefaultPenalties = {1.0, 1.0, 0.6};

/// Fits the vocabulary on `train` only, vectorizes and trains one model.
TaskClassifier fit_task(std::span<const corpus::TaskInstance> train, Task task,
                        const FeatureConfig& features, const svm::TrainingConfig& training,
                        const textproc::Stoplist& stoplist);

/// Same, from sentences that are already analyzed (tokenized, stop-words
/// removed); tokens[i] belongs to train[i].
TaskClassifier fit_task(std::span<const corpus::TaskInstance> train,
                        std::span<const textproc::TokenSequence> tokens, Task task,
                        const FeatureConfig& features, const svm::TrainingConfig& training,
                        const textproc::Stoplist& stoplist);

/// One independent (vocabulary, model) pair per task present in `splits`,
/// each fitted on that task's training part only. `base` supplies tol,
/// max_epochs and seed; C comes from `penalties`.
std::vector<TaskClassifier> train_multitask(const std::map<Task, corpus::DataSplit>& splits,
                                            const FeatureConfig& features,
                                            const TaskPenalties& penalties,
                                            const svm::TrainingConfig& base,
                                            const textproc::Stoplist& stoplist);

}  // namespace picosvm
