// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace picosvm::cli {

/// What a finished command reports back for the exit status.
struct Outcome {
  /// Models that hit max_epochs, e.g. "O" or "O C=0.3".
  std::vector<std::string> not_converged;
};

Outcome cmd_stats(const RunConfig& cfg, std::size_t top_k, std::ostream& out);

Outcome cmd_train(const RunConfig& cfg, std::ostream& out);

/// Every range runs on the same per-task split (or the same folds with `use_cv`).
Outcome cmd_sweep_ngram(const RunConfig& cfg, const std::vector<textproc::NGramRange>& ranges,
                        bool use_cv, std::ostream& out);

/// Dev-split F1 per C; best is the highest F1, smallest C on ties.
Outcome cmd_sweep_c(const RunConfig& cfg, const std::vector<double>& grid, std::ostream& out);

Outcome cmd_eval_cv(const RunConfig& cfg, std::ostream& out);

struct PredictOptions {
  std::vector<std::string> models;
  std::string input;
  /// Empty: records go to `out`.
  std::string output;
};

/// Throws ConfigError if no model is given or a path does not exist.
void check_predict_options(const PredictOptions& options);

/// One JSON record per non-blank input line ("text" or "pmid<TAB>text").
Outcome cmd_predict(const PredictOptions& options, std::ostream& out);

}  // namespace picosvm::cli
