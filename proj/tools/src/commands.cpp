// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "commands.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "picosvm/classifier.hpp"
#include "picosvm/errors.hpp"
#include "picosvm/eval.hpp"
#include "picosvm/hash.hpp"
#include "picosvm/multitask.hpp"
#include "report.hpp"

namespace picosvm::cli {

namespace {

struct LoadedCorpus {
  corpus::Corpus all;
  corpus::Corpus pio;
  Json info;
};

LoadedCorpus load(const RunConfig& cfg) {
  LoadedCorpus c;
  c.all = corpus::ingest(cfg.corpus);
  c.pio = corpus::filter_pio(c.all);
  c.info["path"] = cfg.corpus.string();
  c.info["content_hash"] = to_hex(corpus::content_hash(c.all));
  c.info["sentences"] = c.all.size();
  c.info["pio_sentences"] = c.pio.size();
  return c;
}

void print_banner(std::ostream& out, const std::string& command, const LoadedCorpus& c,
                  const RunConfig& cfg) {
  out << "# picosvm " << command << "  corpus " << c.info["content_hash"].get<std::string>()
      << "  seed " << cfg.seed << "  ngram " << cfg.features.range.to_string() << '\n';
}

std::string task_name(Task task) { return std::string(1, to_char(task)); }

std::vector<textproc::TokenSequence> analyze_all(std::span<const corpus::TaskInstance> part,
                                                 const textproc::Stoplist& stoplist) {
  std::vector<textproc::TokenSequence> tokens;
  tokens.reserve(part.size());
  for (const auto& inst : part) tokens.push_back(analyze(inst.text(), stoplist));
  return tokens;
}

std::vector<int> truth_of(std::span<const corpus::TaskInstance> part) {
  std::vector<int> truth;
  truth.reserve(part.size());
  for (const auto& inst : part) truth.push_back(inst.y);
  return truth;
}

std::vector<double> score_tokens(const TaskClassifier& classifier,
                                 std::span<const textproc::TokenSequence> tokens) {
  std::vector<double> scores;
  scores.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto x = vectorizer::transform(textproc::ngrams(t, classifier.vocab.range()),
                                         classifier.vocab, classifier.features.l2_normalize);
    scores.push_back(svm::decision(classifier.model, x));
  }
  return scores;
}

std::string folds_fingerprint(const std::vector<std::vector<std::size_t>>& folds) {
  Fnv1a hash;
  for (const auto& fold : folds) {
    hash.update(static_cast<std::uint64_t>(fold.size()));
    for (auto i : fold) hash.update(static_cast<std::uint64_t>(i));
  }
  return hash.hex();
}

Json summary_json(const eval::MetricSummary& s) { return {{"mean", s.mean}, {"std", s.stddev}}; }

std::string mean_std(const eval::MetricSummary& s) {
  return fixed4(s.mean) + " +/- " + fixed4(s.stddev);
}

}  // namespace

Outcome cmd_stats(const RunConfig& cfg, std::size_t top_k, std::ostream& out) {
  const auto c = load(cfg);
  auto config = cfg.to_json();
  config["top_k"] = top_k;
  JsonlReport report("stats", config, c.info);

  const auto stats = corpus::corpus_stats(c.all);
  Table counts({"label", "sentences", "abstracts"});
  std::size_t total_sentences = 0;
  for (Label label : kAllLabels) {
    const auto& lc = stats[index_of(label)];
    counts.add({std::string(1, to_char(label)), std::to_string(lc.sentences),
                std::to_string(lc.abstracts)});
    report.add({{"record", "label_count"},
                {"label", std::string(1, to_char(label))},
                {"sentences", lc.sentences},
                {"abstracts", lc.abstracts}});
    total_sentences += lc.sentences;
  }
  counts.add({"total", std::to_string(total_sentences), "-"});

  print_banner(out, "stats", c, cfg);
  counts.print(out);
  for (Task task : cfg.tasks) {
    const Label label = to_label(task);
    const auto top = corpus::top_k_words(c.all, label, top_k, cfg.stoplist);
    Table words({"rank", "word", "count"});
    for (std::size_t r = 0; r < top.size(); ++r) {
      words.add({std::to_string(r + 1), top[r].first, std::to_string(top[r].second)});
      report.add({{"record", "top_word"},
                  {"label", std::string(1, to_char(label))},
                  {"rank", r + 1},
                  {"word", top[r].first},
                  {"count", top[r].second}});
    }
    out << "\ntop " << top_k << " words for " << to_char(label) << '\n';
    words.print(out);
  }
  const auto path = report.write(cfg.out);
  out << "\nreport: " << path.string() << '\n';
  return {};
}

Outcome cmd_train(const RunConfig& cfg, std::ostream& out) {
  const auto c = load(cfg);
  JsonlReport report("train", cfg.to_json(), c.info);
  Outcome outcome;

  struct Trained {
    TaskClassifier classifier;
    std::map<std::string, eval::MetricsReport> parts;
    std::map<std::string, eval::RocCurve> rocs;
  };
  std::vector<Trained> trained;
  Table table({"task", "part", "n", "pos", "accuracy", "precision", "recall", "f1", "auc"});
  for (Task task : cfg.tasks) {
    const auto instances = corpus::binarize(c.pio, task);
    const auto split = corpus::stratified_split(instances, cfg.ratios, cfg.seed);
    Trained t{fit_task(split.train, task, cfg.features, cfg.training_for(task), cfg.stoplist), {},
              {}};
    const auto& model = t.classifier.model;
    if (!model.status.converged) outcome.not_converged.push_back(task_name(task));
    const auto model_path = cfg.out / ("model_" + task_name(task) + ".txt");
    report.add({{"record", "model"},
                {"task", task_name(task)},
                {"c", model.config.c},
                {"converged", model.status.converged},
                {"epochs", model.status.epochs},
                {"duality_gap", model.status.duality_gap},
                {"objective", model.objective_at_convergence},
                {"vocabulary", t.classifier.vocab.size()},
                {"train_size", split.train.size()},
                {"split_fingerprint", to_hex(split.fingerprint())},
                {"path", model_path.string()}});
    for (const auto& [name, part] : {std::pair{"test", &split.test}, std::pair{"dev", &split.dev}}) {
      if (part->empty()) continue;
      const auto tokens = analyze_all(*part, cfg.stoplist);
      const auto scores = score_tokens(t.classifier, tokens);
      const auto truth = truth_of(*part);
      const auto metrics = eval::evaluate(scores, truth);
      if (metrics.auc) t.rocs.emplace(name, eval::roc(scores, truth));
      std::size_t pos = 0;
      for (int v : truth) pos += static_cast<std::size_t>(v);
      Json record{{"record", "metrics"}, {"task", task_name(task)}, {"part", name}};
      record.update(metrics_json(metrics));
      record["split_fingerprint"] = to_hex(split.fingerprint());
      report.add(std::move(record));
      table.add({task_name(task), name, std::to_string(truth.size()), std::to_string(pos),
                 fixed4(metrics.metrics.accuracy), fixed4(metrics.metrics.precision),
                 fixed4(metrics.metrics.recall), fixed4(metrics.metrics.f1), fixed4(metrics.auc)});
      t.parts.emplace(name, metrics);
    }
    trained.push_back(std::move(t));
  }

  // Everything computed; now persist.
  for (const auto& t : trained) {
    const auto name = task_name(t.classifier.task);
    auto model_out = open_output(cfg.out / ("model_" + name + ".txt"));
    save_model(t.classifier, model_out);
    for (const auto& [part, curve] : t.rocs) {
      auto roc_out = open_output(cfg.out / ("roc_" + name + "_" + part + ".tsv"));
      eval::write_roc_points(curve, roc_out);
    }
  }
  const auto path = report.write(cfg.out);

  print_banner(out, "train", c, cfg);
  table.print(out);
  out << "\nreport: " << path.string() << '\n';
  return outcome;
}

Outcome cmd_sweep_ngram(const RunConfig& cfg, const std::vector<textproc::NGramRange>& ranges,
                        bool use_cv, std::ostream& out) {
  const auto c = load(cfg);
  auto config = cfg.to_json();
  Json range_names = Json::array();
  for (const auto& r : ranges) range_names.push_back(r.to_string());
  config["ranges"] = range_names;
  config["evaluation"] = use_cv ? "cv" : "test";
  JsonlReport report("sweep-ngram", config, c.info);
  Outcome outcome;

  std::vector<std::string> headers = {"ngram"};
  for (Task task : cfg.tasks) {
    headers.push_back(task_name(task) + " acc");
    headers.push_back(task_name(task) + " f1");
  }
  std::map<std::string, std::vector<std::string>> rows;
  for (const auto& r : ranges) rows[r.to_string()] = {r.to_string()};

  for (Task task : cfg.tasks) {
    const auto instances = corpus::binarize(c.pio, task);
    if (use_cv) {
      const auto fingerprint =
          folds_fingerprint(eval::stratified_folds(instances, cfg.k, cfg.seed));
      for (const auto& r : ranges) {
        eval::CvConfig cv{cfg.features, cfg.training_for(task)};
        cv.features.range = r;
        const auto result = eval::kfold_cv(instances, cfg.k, cfg.seed, cv, cfg.stoplist);
        if (!result.all_converged) {
          outcome.not_converged.push_back(task_name(task) + " ngram=" + r.to_string());
        }
        report.add({{"record", "sweep"},
                    {"ngram", r.to_string()},
                    {"task", task_name(task)},
                    {"evaluation", "cv" + std::to_string(cfg.k)},
                    {"accuracy", summary_json(result.accuracy)},
                    {"precision", summary_json(result.precision)},
                    {"recall", summary_json(result.recall)},
                    {"f1", summary_json(result.f1)},
                    {"auc", summary_json(result.auc)},
                    {"converged", result.all_converged},
                    {"split_fingerprint", fingerprint}});
        auto& row = rows[r.to_string()];
        row.push_back(fixed4(result.accuracy.mean));
        row.push_back(fixed4(result.f1.mean));
      }
      continue;
    }
    const auto split = corpus::stratified_split(instances, cfg.ratios, cfg.seed);
    const auto train_tokens = analyze_all(split.train, cfg.stoplist);
    const auto test_tokens = analyze_all(split.test, cfg.stoplist);
    const auto truth = truth_of(split.test);
    for (const auto& r : ranges) {
      auto features = cfg.features;
      features.range = r;
      const auto classifier = fit_task(split.train, train_tokens, task, features,
                                       cfg.training_for(task), cfg.stoplist);
      if (!classifier.model.status.converged) {
        outcome.not_converged.push_back(task_name(task) + " ngram=" + r.to_string());
      }
      const auto metrics = eval::evaluate(score_tokens(classifier, test_tokens), truth);
      Json record{{"record", "sweep"},
                  {"ngram", r.to_string()},
                  {"task", task_name(task)},
                  {"evaluation", "test"}};
      record.update(metrics_json(metrics));
      record["converged"] = classifier.model.status.converged;
      record["split_fingerprint"] = to_hex(split.fingerprint());
      report.add(std::move(record));
      auto& row = rows[r.to_string()];
      row.push_back(fixed4(metrics.metrics.accuracy));
      row.push_back(fixed4(metrics.metrics.f1));
    }
  }
  const auto path = report.write(cfg.out);

  print_banner(out, "sweep-ngram", c, cfg);
  Table table(headers);
  for (const auto& r : ranges) table.add(rows[r.to_string()]);
  table.print(out);
  out << "\nevaluation: " << (use_cv ? "cv" + std::to_string(cfg.k) : std::string("test split"))
      << "\nreport: " << path.string() << '\n';
  return outcome;
}

Outcome cmd_sweep_c(const RunConfig& cfg, const std::vector<double>& grid, std::ostream& out) {
  const auto c = load(cfg);
  auto config = cfg.to_json();
  config["c_grid"] = grid;
  JsonlReport report("sweep-c", config, c.info);
  Outcome outcome;

  std::vector<std::string> headers = {"C"};
  for (Task task : cfg.tasks) headers.push_back(task_name(task) + " dev f1");
  std::vector<std::vector<std::string>> rows(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::ostringstream label;
    label << grid[g];
    rows[g].push_back(label.str());
  }
  Table best_table({"task", "best C", "dev f1"});

  for (Task task : cfg.tasks) {
    const auto instances = corpus::binarize(c.pio, task);
    const auto split = corpus::stratified_split(instances, cfg.ratios, cfg.seed);
    if (split.dev.empty()) throw ValidationError("sweep-c needs a non-empty dev split");
    const auto train_tokens = analyze_all(split.train, cfg.stoplist);
    const auto dev_tokens = analyze_all(split.dev, cfg.stoplist);
    // The vocabulary and vectors do not depend on C.
    const auto vocab = fit_vocabulary(train_tokens, cfg.features, cfg.stoplist);
    const auto train_x = vectorize_all(train_tokens, vocab, cfg.features);
    const auto dev_x = vectorize_all(dev_tokens, vocab, cfg.features);
    const auto train_y = svm::to_signed(truth_of(split.train));
    const auto dev_truth = truth_of(split.dev);

    double best_c = grid.front();
    double best_f1 = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      auto training = cfg.training_for(task);
      training.c = grid[g];
      const auto model = svm::train(train_x, train_y, training);
      if (!model.status.converged) {
        std::ostringstream what;
        what << task_name(task) << " C=" << grid[g];
        outcome.not_converged.push_back(what.str());
      }
      std::vector<double> scores;
      scores.reserve(dev_x.size());
      for (const auto& x : dev_x) scores.push_back(svm::decision(model, x));
      const auto metrics = eval::evaluate(scores, dev_truth);
      if (metrics.metrics.f1 > best_f1) {
        best_f1 = metrics.metrics.f1;
        best_c = grid[g];
      }
      Json record{{"record", "sweep"}, {"task", task_name(task)}, {"c", grid[g]},
                  {"evaluation", "dev"}};
      record.update(metrics_json(metrics));
      record["converged"] = model.status.converged;
      record["split_fingerprint"] = to_hex(split.fingerprint());
      report.add(std::move(record));
      rows[g].push_back(fixed4(metrics.metrics.f1));
    }
    report.add({{"record", "best"},
                {"task", task_name(task)},
                {"c", best_c},
                {"f1", best_f1},
                {"split_fingerprint", to_hex(split.fingerprint())}});
    std::ostringstream best_label;
    best_label << best_c;
    best_table.add({task_name(task), best_label.str(), fixed4(best_f1)});
  }
  const auto path = report.write(cfg.out);

  print_banner(out, "sweep-c", c, cfg);
  Table table(headers);
  for (auto& row : rows) table.add(std::move(row));
  table.print(out);
  out << '\n';
  best_table.print(out);
  out << "\nreport: " << path.string() << '\n';
  return outcome;
}

Outcome cmd_eval_cv(const RunConfig& cfg, std::ostream& out) {
  const auto c = load(cfg);
  JsonlReport report("eval-cv", cfg.to_json(), c.info);
  Outcome outcome;
  Table folds_table({"task", "fold", "n", "accuracy", "precision", "recall", "f1", "auc"});
  Table summary({"task", "accuracy", "precision", "recall", "f1", "auc"});

  for (Task task : cfg.tasks) {
    const auto instances = corpus::binarize(c.pio, task);
    const eval::CvConfig cv{cfg.features, cfg.training_for(task)};
    const auto result = eval::kfold_cv(instances, cfg.k, cfg.seed, cv, cfg.stoplist);
    const auto fingerprint =
        folds_fingerprint(eval::stratified_folds(instances, cfg.k, cfg.seed));
    if (!result.all_converged) outcome.not_converged.push_back(task_name(task));
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
      const auto& fold = result.folds[f];
      Json record{{"record", "fold"}, {"task", task_name(task)}, {"fold", f}};
      record.update(metrics_json(fold));
      report.add(std::move(record));
      folds_table.add({task_name(task), std::to_string(f), std::to_string(fold.confusion.total()),
                       fixed4(fold.metrics.accuracy), fixed4(fold.metrics.precision),
                       fixed4(fold.metrics.recall), fixed4(fold.metrics.f1), fixed4(fold.auc)});
    }
    report.add({{"record", "summary"},
                {"task", task_name(task)},
                {"k", result.k},
                {"accuracy", summary_json(result.accuracy)},
                {"precision", summary_json(result.precision)},
                {"recall", summary_json(result.recall)},
                {"f1", summary_json(result.f1)},
                {"auc", summary_json(result.auc)},
                {"converged", result.all_converged},
                {"split_fingerprint", fingerprint}});
    summary.add({task_name(task), mean_std(result.accuracy), mean_std(result.precision),
                 mean_std(result.recall), mean_std(result.f1), mean_std(result.auc)});
  }
  const auto path = report.write(cfg.out);

  print_banner(out, "eval-cv", c, cfg);
  folds_table.print(out);
  out << '\n';
  summary.print(out);
  out << "\nreport: " << path.string() << '\n';
  return outcome;
}

void check_predict_options(const PredictOptions& options) {
  if (options.models.empty()) throw ConfigError("predict needs at least one --model");
  for (const auto& m : options.models) {
    if (!std::filesystem::is_regular_file(m)) throw ConfigError("model file not found: " + m);
  }
  if (options.input.empty()) throw ConfigError("predict needs --input");
  if (!std::filesystem::exists(options.input) || std::filesystem::is_directory(options.input)) {
    throw ConfigError("input file not found: " + options.input);
  }
}

Outcome cmd_predict(const PredictOptions& options, std::ostream& out) {
  std::vector<TaskClassifier> models;
  for (const auto& path : options.models) models.push_back(load_model(path));

  std::ifstream in(options.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + options.input);
  std::vector<Json> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json record;
    record["line"] = line_no;
    std::string text = line;
    if (const auto tab = line.find('\t'); tab != std::string::npos) {
      record["pmid"] = line.substr(0, tab);
      text = line.substr(tab + 1);
    }
    record["text"] = text;
    Json scores;
    for (const auto& m : models) {
      const double score = m.score(text);
      scores[task_name(m.task)] = {{"score", score}, {"label", score >= 0.0 ? 1 : 0}};
    }
    record["tasks"] = std::move(scores);
    records.push_back(std::move(record));
  }

  if (options.output.empty()) {
    for (const auto& r : records) out << r.dump() << '\n';
  } else {
    auto file = open_output(options.output);
    for (const auto& r : records) file << r.dump() << '\n';
    if (!file) throw IoError("failed writing " + options.output);
  }
  return {};
}

}  // namespace picosvm::cli
