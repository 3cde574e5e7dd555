// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "picosvm/labels.hpp"
#include "picosvm/vectorizer.hpp"

namespace picosvm::svm {

using vectorizer::SparseVector;

struct TrainingConfig {
  double c = 1.0;
  /// Target relative duality gap: training stops once
  /// primal - dual <= tol * (1 + |dual|).
  double tol = 1e-6;
  int max_epochs = 1000;
  std::uint64_t seed = 0;
  Task task = Task::P;

  /// C = 1.0 for P and I, 0.6 for O.
  static TrainingConfig defaults_for(Task task);

  /// Throws ValidationError unless c > 0, tol > 0 and max_epochs >= 1.
  void validate() const;
};

struct SolverStatus {
  bool converged = false;
  int epochs = 0;
  /// Certified upper bound on objective - optimum at exit.
  double duality_gap = 0.0;
  /// Incumbent primal objective after each epoch; non-increasing.
  std::vector<double> objective_trace;
};

/// Soft-margin linear SVM: decision(x) = w.x + b.
struct LinearModel {
  std::vector<double> w;
  double b = 0.0;
  TrainingConfig config;
  double objective_at_convergence = 0.0;
  SolverStatus status;

  std::size_t dim() const noexcept { return w.size(); }
};

/// Per-instance slack xi_i = max(0, 1 - y_i (w.x_i + b)).
struct SlackSummary {
  std::vector<double> xi;
  double total_slack = 0.0;
};

/// Maps corpus labels {1, 0} to SVM labels {+1, -1}.
std::vector<int> to_signed(std::span<const int> binary_labels);

/// Minimizes (1/2)||w||^2 + C * sum_i max(0, 1 - y_i (w.x_i + b)) with b
/// unregularized. This hinge form is the constrained soft-margin problem
/// with each slack set to its smallest feasible value.
///
/// The solver is SMO on the dual (pair updates that keep sum_i y_i a_i = 0,
/// second-order working-set selection). After every epoch of n pair updates
/// the current w with its exactly optimal bias is a primal candidate and the
/// dual value is a lower bound, so the returned objective is certified to lie
/// within tol * (1 + |dual|) of the optimum when status.converged is set.
/// Training also stops as converged once no pair violates the optimality
/// conditions by more than 1e-12. Deterministic for a fixed seed, which only
/// sets the scan order used to break selection ties.
///
/// Throws ContractError on size/dimension/label mismatches and
/// ValidationError if only one class is present. Hitting max_epochs is not
/// an error: the best model so far is returned with converged == false.
LinearModel train(std::span<const SparseVector> X, std::span<const int> y,
                  const TrainingConfig& config);

/// w.x + b. Throws ContractError if x.dim differs from the model dimension.
double decision(const LinearModel& model, const SparseVector& x);

/// 1 if decision >= 0, else 0.
int predict(const LinearModel& model, const SparseVector& x);

SlackSummary slack(const LinearModel& model, std::span<const SparseVector> X,
                   std::span<const int> y);

/// (1/2)||w||^2 + C * total slack.
double objective(const LinearModel& model, std::span<const SparseVector> X,
                 std::span<const int> y);

/// Bias minimizing sum_i max(0, 1 - y_i (score_i + b)) for fixed scores.
/// When the minimizer is an interval, its midpoint.
double optimal_bias(std::span<const double> scores, std::span<const int> y);

}  // namespace picosvm::svm
