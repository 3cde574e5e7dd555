// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "picosvm/errors.hpp"
#include "picosvm/multitask.hpp"
#include "picosvm/shuffle.hpp"

namespace picosvm::eval {

namespace {

void check_binary(std::span<const int> labels, const char* what) {
  for (int v : labels) {
    if (v != 0 && v != 1) {
      throw ContractError(std::string(what) + ": labels must be 0 or 1, got " + std::to_string(v));
    }
  }
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const int> truth) {
  const auto pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  return {pos, truth.size() - pos};
}

// 0/0 -> 0 with the flag raised.
double ratio(double num, double den, bool& degenerate) {
  if (den == 0.0) {
    degenerate = true;
    return 0.0;
  }
  return num / den;
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw ContractError("confusion: " + std::to_string(predicted.size()) + " predictions vs " +
                        std::to_string(truth.size()) + " labels");
  }
  if (truth.empty()) throw ContractError("confusion: no instances");
  check_binary(predicted, "confusion");
  check_binary(truth, "confusion");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) {
      ++(predicted[i] == 1 ? cm.tp : cm.fn);
    } else {
      ++(predicted[i] == 1 ? cm.fp : cm.tn);
    }
  }
  return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
  Metrics m;
  const auto tp = static_cast<double>(cm.tp);
  bool unused = false;
  m.accuracy = ratio(static_cast<double>(cm.tp + cm.tn), static_cast<double>(cm.total()), unused);
  m.precision = ratio(tp, static_cast<double>(cm.tp + cm.fp), m.precision_degenerate);
  m.recall = ratio(tp, static_cast<double>(cm.tp + cm.fn), m.recall_degenerate);
  m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall, m.f1_degenerate);
  return m;
}

RocCurve roc(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size()) throw ContractError("roc: scores and labels differ in length");
  check_binary(truth, "roc");
  const auto [n_pos, n_neg] = class_counts(truth);
  if (n_pos == 0 || n_neg == 0) throw ValidationError("roc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      ++(truth[order[i]] == 1 ? tp : fp);
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  curve.auc = trapezoid_area(curve.points);
  return curve;
}

double trapezoid_area(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

double rank_auc(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size()) {
    throw ContractError("rank_auc: scores and labels differ in length");
  }
  check_binary(truth, "rank_auc");
  const auto [n_pos, n_neg] = class_counts(truth);
  if (n_pos == 0 || n_neg == 0) throw ValidationError("rank_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    for (; j < order.size() && scores[order[j]] == scores[order[i]]; ++j) {
      pos_in_group += truth[order[j]] == 1 ? 1 : 0;
    }
    // ranks i+1 .. j share their average
    const double average_rank = 0.5 * static_cast<double>(i + 1 + j);
    pos_rank_sum += average_rank * static_cast<double>(pos_in_group);
    i = j;
  }
  const double p = static_cast<double>(n_pos);
  const double u = pos_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

void write_roc_points(const RocCurve& curve, std::ostream& out) {
  const auto precision = out.precision(17);
  for (const auto& point : curve.points) out << point.fpr << '\t' << point.tpr << '\n';
  out.precision(precision);
}

MetricsReport evaluate(std::span<const double> scores, std::span<const int> truth) {
  std::vector<int> predicted;
  predicted.reserve(scores.size());
  for (double s : scores) predicted.push_back(s >= 0.0 ? 1 : 0);
  MetricsReport report;
  report.confusion = confusion(predicted, truth);
  report.metrics = metrics(report.confusion);
  const auto [n_pos, n_neg] = class_counts(truth);
  if (n_pos > 0 && n_neg > 0) report.auc = roc(scores, truth).auc;
  return report;
}

MetricSummary summarize(std::span<const double> values) {
  MetricSummary summary;
  if (values.empty()) return summary;
  // sorted so the result does not depend on fold completion order
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  summary.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - summary.mean) * (v - summary.mean);
    summary.stddev = std::sqrt(ss / (n - 1.0));
  }
  return summary;
}

std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const corpus::TaskInstance> instances, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("k-fold cross-validation needs k >= 2");
  const auto folds_n = static_cast<std::size_t>(k);
  std::vector<std::vector<std::size_t>> folds(folds_n);
  std::mt19937_64 rng(seed);
  for (int cls : {1, 0}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (instances[i].y == cls) members.push_back(i);
    }
    if (members.size() < folds_n) {
      throw ValidationError("class " + std::to_string(cls) + " has " +
                            std::to_string(members.size()) + " instances, fewer than k = " +
                            std::to_string(k));
    }
    portable_shuffle(std::span<std::size_t>(members), rng);
    for (std::size_t i = 0; i < members.size(); ++i) folds[i % folds_n].push_back(members[i]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

CvResult kfold_cv(std::span<const corpus::TaskInstance> instances, int k, std::uint64_t seed,
                  const CvConfig& config, const textproc::Stoplist& stoplist,
                  const FoldObserver& observer) {
  const auto folds = stratified_folds(instances, k, seed);
  if (instances.empty()) throw ValidationError("kfold_cv: no instances");
  const Task task = instances.front().task;

  std::vector<textproc::TokenSequence> tokens;
  tokens.reserve(instances.size());
  for (const auto& instance : instances) tokens.push_back(analyze(instance.text(), stoplist));

  CvResult result;
  result.k = k;
  result.seed = seed;
  std::vector<char> held_out(instances.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::fill(held_out.begin(), held_out.end(), 0);
    for (std::size_t i : folds[f]) held_out[i] = 1;
    std::vector<std::size_t> train_idx;
    std::vector<corpus::TaskInstance> train;
    std::vector<textproc::TokenSequence> train_tokens;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (held_out[i]) continue;
      train_idx.push_back(i);
      train.push_back(instances[i]);
      train_tokens.push_back(tokens[i]);
    }

    const auto classifier = fit_task(train, train_tokens, task, config.features, config.training,
                                     stoplist);
    result.all_converged = result.all_converged && classifier.model.status.converged;

    std::vector<double> scores;
    std::vector<int> truth;
    for (std::size_t i : folds[f]) {
      const auto x = vectorizer::transform(textproc::ngrams(tokens[i], classifier.vocab.range()),
                                           classifier.vocab, config.features.l2_normalize);
      scores.push_back(svm::decision(classifier.model, x));
      truth.push_back(instances[i].y);
    }
    result.folds.push_back(evaluate(scores, truth));
    if (observer) observer(FoldContext{f, train_idx, folds[f], classifier});
  }

  const auto collect = [&](auto field) {
    std::vector<double> values;
    for (const auto& fold : result.folds) {
      if (auto v = field(fold)) values.push_back(*v);
    }
    return summarize(values);
  };
  result.accuracy = collect([](const MetricsReport& r) { return std::optional(r.metrics.accuracy); });
  result.precision =
      collect([](const MetricsReport& r) { return std::optional(r.metrics.precision); });
  result.recall = collect([](const MetricsReport& r) { return std::optional(r.metrics.recall); });
  result.f1 = collect([](const MetricsReport& r) { return std::optional(r.metrics.f1); });
  result.auc = collect([](const MetricsReport& r) { return r.auc; });
  return result;
}

}  // namespace picosvm::eval
