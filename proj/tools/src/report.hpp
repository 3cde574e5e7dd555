// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "picosvm/eval.hpp"

namespace picosvm::cli {

using Json = nlohmann::ordered_json;

/// Right-aligned plain-text table.
class Table {
 public:
  explicit Table(std::vector<std::string> headers);
  void add(std::vector<std::string> row);
  void print(std::ostream& out) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

/// Four decimals, or "-" when absent.
std::string fixed4(double value);
std::string fixed4(const std::optional<double>& value);

/// Machine-readable report: one JSON object per line, the first being the
/// reproducibility header.
class JsonlReport {
 public:
  JsonlReport(std::string command, Json config, Json corpus);

  void add(Json record);
  const std::vector<Json>& records() const noexcept { return records_; }
  /// Writes <dir>/<command>.jsonl and returns its path. Throws IoError.
  std::filesystem::path write(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  std::vector<Json> records_;
};

/// Counts, metrics and degenerate flags of one evaluation.
Json metrics_json(const eval::MetricsReport& report);

/// Opens a file for writing under `dir`, creating the directory. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace picosvm::cli
