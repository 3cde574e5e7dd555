// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/cli/app.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "picosvm/errors.hpp"
#include "run_config.hpp"

namespace picosvm::cli {

namespace {

void error_record(std::ostream& err, const std::string& category, int code,
                  const std::string& type, const std::string& message,
                  const nlohmann::ordered_json& extra = {}) {
  nlohmann::ordered_json record;
  record["error"] = category;
  record["exit_code"] = code;
  record["type"] = type;
  record["message"] = message;
  if (extra.is_object()) record.update(extra);
  err << record.dump() << '\n';
}

std::string kind_of(const Error& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const ContractError*>(&e)) return "ContractError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "Error";
}

void add_run_options(CLI::App& app, RunOptions& o) {
  app.add_option("--corpus", o.corpus, "Labeled sentence corpus (TSV: pmid, heading, label, text)");
  app.add_option("--tasks", o.tasks, "Tasks to run, any of P, I, O")->capture_default_str();
  app.add_option("--ngram", o.ngram, "n-gram range, e.g. 1, 2-3, 1-2")->capture_default_str();
  app.add_option("--c-p", o.c_p, "Penalty C for the P task")->capture_default_str();
  app.add_option("--c-i", o.c_i, "Penalty C for the I task")->capture_default_str();
  app.add_option("--c-o", o.c_o, "Penalty C for the O task")->capture_default_str();
  app.add_option("--ratios", o.ratios, "Split ratios train:test:dev")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for splits, folds and the solver")->capture_default_str();
  app.add_flag("--normalize,!--no-normalize", o.normalize, "L2-normalize TF-IDF vectors")
      ->capture_default_str();
  app.add_flag("--smooth-idf,!--no-smooth-idf", o.smooth_idf, "idf = ln(D / (df + 1))")
      ->capture_default_str();
  app.add_option("--min-df", o.min_df, "Minimum document frequency")->capture_default_str();
  app.add_option("--stoplist", o.stoplist, "Stop-word file (default: built-in English list)");
  app.add_option("--k", o.k, "Cross-validation folds")->capture_default_str();
  app.add_option("--tol", o.tol, "Relative duality-gap tolerance")->capture_default_str();
  app.add_option("--max-epochs", o.max_epochs, "Solver epoch limit")->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
}

int finish(const Outcome& outcome, std::ostream& err) {
  if (outcome.not_converged.empty()) return kExitOk;
  std::string joined;
  for (const auto& m : outcome.not_converged) joined += (joined.empty() ? "" : ", ") + m;
  error_record(err, "non-convergence", kExitNotConverged, "NotConverged",
               "solver hit max_epochs for: " + joined,
               {{"models", outcome.not_converged}});
  return kExitNotConverged;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Sentence-level PICO classification with TF-IDF features and linear SVMs",
               "picosvm");
  app.set_version_flag("--version", std::string(PICOSVM_VERSION));
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions options;
  add_run_options(app, options);

  auto* stats = app.add_subcommand("stats", "Corpus statistics and top-k words per P/I/O");
  std::size_t top_k = 10;
  stats->add_option("--top-k", top_k, "Words per label")->capture_default_str();

  auto* train = app.add_subcommand("train", "Train, evaluate and save one model per task");

  auto* sweep_ngram = app.add_subcommand("sweep-ngram", "Compare n-gram ranges on one split");
  std::string ranges = "1,2,3,1-2,1-3,2-3";
  bool use_cv = false;
  sweep_ngram->add_option("--ranges", ranges, "Comma-separated n-gram ranges")
      ->capture_default_str();
  sweep_ngram->add_flag("--cv", use_cv, "Score by k-fold cross-validation instead of the test split");

  auto* sweep_c = app.add_subcommand("sweep-c", "Scan the penalty C by dev-split F1");
  std::string c_grid = "0.1:3.0:0.1";
  sweep_c->add_option("--c-grid", c_grid, "lo:hi:step or a comma-separated list")
      ->capture_default_str();

  auto* predict = app.add_subcommand("predict", "Score sentences with saved models");
  PredictOptions predict_options;
  predict->add_option("--model", predict_options.models, "Model artifact (repeatable)");
  predict->add_option("--input", predict_options.input, "One sentence per line, or pmid<TAB>text");
  predict->add_option("--output", predict_options.output, "Output file (default: stdout)");

  auto* eval_cv = app.add_subcommand("eval-cv", "Stratified k-fold cross-validation per task");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << PICOSVM_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_record(err, "usage", kExitUsage, e.get_name(), e.what());
    return kExitUsage;
  }

  try {
    if (predict->parsed()) {
      check_predict_options(predict_options);
      return finish(cmd_predict(predict_options, out), err);
    }
    const auto cfg = resolve(options, true);
    if (stats->parsed()) {
      if (top_k < 1) throw ConfigError("--top-k must be at least 1");
      return finish(cmd_stats(cfg, top_k, out), err);
    }
    if (train->parsed()) return finish(cmd_train(cfg, out), err);
    if (sweep_ngram->parsed()) return finish(cmd_sweep_ngram(cfg, parse_ranges(ranges), use_cv, out), err);
    if (sweep_c->parsed()) return finish(cmd_sweep_c(cfg, parse_c_grid(c_grid), out), err);
    if (eval_cv->parsed()) return finish(cmd_eval_cv(cfg, out), err);
  } catch (const ConfigError& e) {
    error_record(err, "usage", kExitUsage, "ConfigError", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    error_record(err, "data", kExitData, "ParseError", e.what(), {{"line", e.line()}});
    return kExitData;
  } catch (const VersionError& e) {
    error_record(err, "data", kExitData, "VersionError", e.what(),
                 {{"found_version", e.found()}, {"supported_version", e.supported()}});
    return kExitData;
  } catch (const Error& e) {
    error_record(err, "data", kExitData, kind_of(e), e.what());
    return kExitData;
  }
  error_record(err, "usage", kExitUsage, "ConfigError", "no command given");
  return kExitUsage;
}

}  // namespace picosvm::cli
