// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "picosvm/classifier.hpp"
#include "picosvm/corpus.hpp"
#include "picosvm/svm.hpp"

namespace picosvm::eval {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Any 0/0 ratio is reported as 0 with its flag set.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;
};

/// Labels are binary {0, 1}. Throws ContractError on length mismatch or empty input.
ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> truth);

Metrics metrics(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Starts at (0, 0), ends at (1, 1), one point per distinct score.
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Sweeps the threshold over the distinct scores from high to low, tied
/// scores entering together. Throws ValidationError unless both classes occur.
RocCurve roc(std::span<const double> scores, std::span<const int> truth);

double trapezoid_area(std::span<const RocPoint> points);

/// Probability that a random positive outscores a random negative, ties
/// counted half (Mann-Whitney U / (n_pos * n_neg)), via average ranks.
double rank_auc(std::span<const double> scores, std::span<const int> truth);

/// "fpr<TAB>tpr" lines for external plotting.
void write_roc_points(const RocCurve& curve, std::ostream& out);

struct MetricsReport {
  ConfusionMatrix confusion;
  Metrics metrics;
  /// Present only when both classes occur in the truth labels.
  std::optional<double> auc;
};

/// Labels come from thresholding the scores at 0 (ties positive); AUC
/// uses the raw scores.
MetricsReport evaluate(std::span<const double> scores, std::span<const int> truth);

struct MetricSummary {
  double mean = 0.0;
  /// Sample standard deviation (divisor k - 1).
  double stddev = 0.0;
};

struct CvConfig {
  FeatureConfig features;
  svm::TrainingConfig training;
};

struct CvResult {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<MetricsReport> folds;
  MetricSummary accuracy;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  /// Over folds that have an AUC.
  MetricSummary auc;
  /// False if any fold's solver hit max_epochs.
  bool all_converged = true;
};

/// Everything a caller may want to inspect about one fold after training.
struct FoldContext {
  std::size_t fold = 0;
  std::span<const std::size_t> train_indices;
  std::span<const std::size_t> test_indices;
  const TaskClassifier& classifier;
};

using FoldObserver = std::function<void(const FoldContext&)>;

/// Stratified fold assignment: each class is shuffled with the seed and dealt
/// round-robin, so per-class fold sizes differ by at most one. Returns the
/// instance indices of each fold, ascending. Throws ValidationError if k < 2
/// or a class has fewer than k instances.
std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const corpus::TaskInstance> instances, int k, std::uint64_t seed);

/// For each fold: fit vocabulary and model on the other k - 1 folds, then
/// score the held-out fold. Mean and standard deviation are order-independent
/// functions of the per-fold reports.
CvResult kfold_cv(std::span<const corpus::TaskInstance> instances, int k, std::uint64_t seed,
                  const CvConfig& config, const textproc::Stoplist& stoplist,
                  const FoldObserver& observer = {});

MetricSummary summarize(std::span<const double> values);

}  // namespace picosvm::eval
