// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "picosvm/corpus.hpp"
#include "picosvm/features.hpp"
#include "picosvm/labels.hpp"
#include "picosvm/multitask.hpp"
#include "picosvm/svm.hpp"
#include "picosvm/textproc.hpp"

namespace picosvm::cli {

/// Invalid flags or config values; maps to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw option values as bound to the command line and config file.
struct RunOptions {
  std::string corpus;
  std::string tasks = "PIO";
  std::string ngram = "1-2";
  double c_p = kDefaultPenalties[0];
  double c_i = kDefaultPenalties[1];
  double c_o = kDefaultPenalties[2];
  std::string ratios = "0.8:0.1:0.1";
  std::uint64_t seed = 1;
  bool normalize = true;
  bool smooth_idf = true;
  std::size_t min_df = 1;
  std::string stoplist;
  int k = 10;
  double tol = 1e-6;
  int max_epochs = 1000;
  std::string out = "picosvm-out";
};

/// Validated, typed configuration shared by all corpus-based commands.
struct RunConfig {
  std::filesystem::path corpus;
  std::vector<Task> tasks;
  FeatureConfig features;
  TaskPenalties penalties = kDefaultPenalties;
  corpus::SplitRatios ratios;
  std::uint64_t seed = 1;
  textproc::Stoplist stoplist;
  std::string stoplist_source;
  int k = 10;
  double tol = 1e-6;
  int max_epochs = 1000;
  std::filesystem::path out;

  /// Training settings for one task: C from the penalties, the rest shared.
  svm::TrainingConfig training_for(Task task) const;
  /// Full effective configuration for report headers.
  nlohmann::ordered_json to_json() const;
};

/// Throws ConfigError. `need_corpus` requires an existing corpus file.
RunConfig resolve(const RunOptions& options, bool need_corpus);

std::vector<Task> parse_tasks(const std::string& text);
corpus::SplitRatios parse_ratios(const std::string& text);
std::vector<textproc::NGramRange> parse_ranges(const std::string& text);
/// "lo:hi:step" (inclusive) or a comma-separated list, ascending and unique.
std::vector<double> parse_c_grid(const std::string& text);

}  // namespace picosvm::cli
