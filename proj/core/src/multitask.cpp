// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/multitask.hpp"

#include "picosvm/errors.hpp"

namespace picosvm {

TaskClassifier fit_task(std::span<const corpus::TaskInstance> train, Task task,
                        const FeatureConfig& features, const svm::TrainingConfig& training,
                        const textproc::Stoplist& stoplist) {
  std::vector<textproc::TokenSequence> tokens;
  tokens.reserve(train.size());
  for (const auto& instance : train) tokens.push_back(analyze(instance.text(), stoplist));
  return fit_task(train, tokens, task, features, training, stoplist);
}

TaskClassifier fit_task(std::span<const corpus::TaskInstance> train,
                        std::span<const textproc::TokenSequence> tokens, Task task,
                        const FeatureConfig& features, const svm::TrainingConfig& training,
                        const textproc::Stoplist& stoplist) {
  if (tokens.size() != train.size()) {
    throw ContractError("fit_task: token sequences do not match training instances");
  }
  std::vector<int> labels;
  labels.reserve(train.size());
  for (const auto& instance : train) {
    if (instance.task != task) throw ContractError("fit_task: instance binarized for another task");
    labels.push_back(instance.y);
  }

  TaskClassifier out;
  out.task = task;
  out.features = features;
  out.stoplist = stoplist;
  out.vocab = fit_vocabulary(tokens, features, stoplist);
  const auto vectors = vectorize_all(tokens, out.vocab, features);
  auto config = training;
  config.task = task;
  out.model = svm::train(vectors, svm::to_signed(labels), config);
  return out;
}

std::vector<TaskClassifier> train_multitask(const std::map<Task, corpus::DataSplit>& splits,
                                            const FeatureConfig& features,
                                            const TaskPenalties& penalties,
                                            const svm::TrainingConfig& base,
                                            const textproc::Stoplist& stoplist) {
  if (splits.empty()) throw ValidationError("train_multitask: no task datasets given");
  std::vector<TaskClassifier> models;
  for (const auto& [task, split] : splits) {
    auto config = base;
    config.task = task;
    config.c = penalties[index_of(task)];
    models.push_back(fit_task(split.train, task, features, config, stoplist));
  }
  return models;
}

}  // namespace picosvm
