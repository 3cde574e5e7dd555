// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "picosvm/errors.hpp"
#include "picosvm/hash.hpp"

namespace picosvm::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

svm::TrainingConfig RunConfig::training_for(Task task) const {
  svm::TrainingConfig config;
  config.task = task;
  config.c = penalties[index_of(task)];
  config.tol = tol;
  config.max_epochs = max_epochs;
  config.seed = seed;
  return config;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["corpus"] = corpus.string();
  std::string task_letters;
  for (Task t : tasks) task_letters += to_char(t);
  j["tasks"] = task_letters;
  j["ngram"] = features.range.to_string();
  j["c"] = {{"P", penalties[0]}, {"I", penalties[1]}, {"O", penalties[2]}};
  j["ratios"] = {ratios.train, ratios.test, ratios.dev};
  j["seed"] = seed;
  j["normalize"] = features.l2_normalize;
  j["smooth_idf"] = features.smooth_idf;
  j["min_df"] = features.min_df;
  j["stoplist"] = {{"source", stoplist_source},
                   {"id", stoplist.id()},
                   {"hash", to_hex(stoplist.content_hash())},
                   {"words", stoplist.words().size()}};
  j["k"] = k;
  j["tol"] = tol;
  j["max_epochs"] = max_epochs;
  j["out"] = out.string();
  return j;
}

std::vector<Task> parse_tasks(const std::string& text) {
  std::vector<Task> tasks;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    const auto task = parse_task(std::string_view(&ch, 1));
    if (!task) throw ConfigError("unknown task '" + std::string(1, ch) + "' (expected P, I, O)");
    if (std::find(tasks.begin(), tasks.end(), *task) == tasks.end()) tasks.push_back(*task);
  }
  if (tasks.empty()) throw ConfigError("no tasks selected");
  std::sort(tasks.begin(), tasks.end());
  return tasks;
}

corpus::SplitRatios parse_ratios(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("ratios must be train:test:dev, got '" + text + "'");
  corpus::SplitRatios r;
  r.train = parse_double(parts[0], "ratio");
  r.test = parse_double(parts[1], "ratio");
  r.dev = parse_double(parts[2], "ratio");
  if (r.train <= 0.0 || r.test < 0.0 || r.dev < 0.0 ||
      std::abs(r.train + r.test + r.dev - 1.0) > 1e-9) {
    throw ConfigError("ratios must be non-negative, train > 0, and sum to 1");
  }
  return r;
}

std::vector<textproc::NGramRange> parse_ranges(const std::string& text) {
  std::vector<textproc::NGramRange> ranges;
  for (const auto& part : split(text, ',')) {
    try {
      ranges.push_back(textproc::NGramRange::parse(part));
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
  return ranges;
}

std::vector<double> parse_c_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("C grid must be lo:hi:step, got '" + text + "'");
    const double lo = parse_double(parts[0], "C");
    const double hi = parse_double(parts[1], "C");
    const double step = parse_double(parts[2], "C step");
    if (!(step > 0.0) || hi < lo) throw ConfigError("C grid needs step > 0 and hi >= lo");
    // Index-based generation, rounded to 12 decimals, so 0.1 * 3 prints as 0.3.
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) {
      grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  } else {
    for (const auto& part : split(text, ',')) grid.push_back(parse_double(part, "C"));
  }
  for (double c : grid) {
    if (!(c > 0.0)) throw ConfigError("C values must be positive");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) throw ConfigError("empty C grid");
  return grid;
}

RunConfig resolve(const RunOptions& o, bool need_corpus) {
  RunConfig cfg;
  if (need_corpus) {
    if (o.corpus.empty()) throw ConfigError("--corpus is required");
    if (!std::filesystem::is_regular_file(o.corpus)) {
      throw ConfigError("corpus file not found: " + o.corpus);
    }
  }
  cfg.corpus = o.corpus;
  cfg.tasks = parse_tasks(o.tasks);
  try {
    cfg.features.range = textproc::NGramRange::parse(o.ngram);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  cfg.features.l2_normalize = o.normalize;
  cfg.features.smooth_idf = o.smooth_idf;
  if (o.min_df < 1) throw ConfigError("min-df must be at least 1");
  cfg.features.min_df = o.min_df;
  cfg.penalties = {o.c_p, o.c_i, o.c_o};
  for (double c : cfg.penalties) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("C must be positive and finite");
  }
  cfg.ratios = parse_ratios(o.ratios);
  cfg.seed = o.seed;
  if (o.stoplist.empty()) {
    cfg.stoplist = textproc::Stoplist::english();
    cfg.stoplist_source = "builtin";
  } else {
    if (!std::filesystem::is_regular_file(o.stoplist)) {
      throw ConfigError("stop-word list not found: " + o.stoplist);
    }
    try {
      cfg.stoplist = textproc::Stoplist::load(o.stoplist);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    cfg.stoplist_source = o.stoplist;
  }
  if (o.k < 2) throw ConfigError("k must be at least 2");
  cfg.k = o.k;
  if (!(o.tol > 0.0)) throw ConfigError("tol must be positive");
  cfg.tol = o.tol;
  if (o.max_epochs < 1) throw ConfigError("max-epochs must be at least 1");
  cfg.max_epochs = o.max_epochs;
  if (o.out.empty()) throw ConfigError("--out must not be empty");
  cfg.out = o.out;
  return cfg;
}

}  // namespace picosvm::cli
