// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>

#include "picosvm/errors.hpp"

namespace picosvm::cli {

Table::Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void Table::add(std::vector<std::string> row) {
  row.resize(headers_.size());
  rows_.push_back(std::move(row));
}

void Table::print(std::ostream& out) const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t c = 0; c < headers_.size(); ++c) {
    width[c] = headers_[c].size();
    for (const auto& row : rows_) width[c] = std::max(width[c], row[c].size());
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    out << '\n';
  };
  line(headers_);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows_) line(row);
  out << std::left;
}

std::string fixed4(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string fixed4(const std::optional<double>& value) {
  return value ? fixed4(*value) : std::string("-");
}

JsonlReport::JsonlReport(std::string command, Json config, Json corpus)
    : command_(std::move(command)) {
  Json header;
  header["record"] = "header";
  header["tool"] = "picosvm";
  header["version"] = PICOSVM_VERSION;
  header["command"] = command_;
  header["config"] = std::move(config);
  header["corpus"] = std::move(corpus);
  records_.push_back(std::move(header));
}

void JsonlReport::add(Json record) { records_.push_back(std::move(record)); }

std::filesystem::path JsonlReport::write(const std::filesystem::path& dir) const {
  const auto path = dir / (command_ + ".jsonl");
  auto out = open_output(path);
  for (const auto& record : records_) out << record.dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
  return path;
}

Json metrics_json(const eval::MetricsReport& report) {
  Json j;
  j["n"] = report.confusion.total();
  j["tp"] = report.confusion.tp;
  j["fp"] = report.confusion.fp;
  j["tn"] = report.confusion.tn;
  j["fn"] = report.confusion.fn;
  j["accuracy"] = report.metrics.accuracy;
  j["precision"] = report.metrics.precision;
  j["recall"] = report.metrics.recall;
  j["f1"] = report.metrics.f1;
  j["auc"] = report.auc ? Json(*report.auc) : Json(nullptr);
  Json degenerate = Json::array();
  if (report.metrics.precision_degenerate) degenerate.push_back("precision");
  if (report.metrics.recall_degenerate) degenerate.push_back("recall");
  if (report.metrics.f1_degenerate) degenerate.push_back("f1");
  j["degenerate"] = std::move(degenerate);
  return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace picosvm::cli
