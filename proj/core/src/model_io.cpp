// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <charconv>
#include <fstream>
#include <limits>
#include <system_error>

#include "picosvm/classifier.hpp"
#include "picosvm/errors.hpp"
#include "picosvm/hash.hpp"

namespace picosvm {

namespace {

constexpr std::string_view kMagic = "picosvm-model";

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(line_no_ + 1, "unexpected end of model file");
    ++line_no_;
    return line;
  }

  // "key value" with the expected key.
  std::string value_of(std::string_view key) {
    const auto line = next();
    if (line.size() < key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ') {
      fail("expected '" + std::string(key) + " <value>'");
    }
    return line.substr(key.size() + 1);
  }

  template <typename T>
  T number(std::string_view text) const {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail("invalid number '" + std::string(text) + "'");
    return value;
  }

  template <typename T>
  T number_of(std::string_view key) {
    return number<T>(value_of(key));
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (auto tab = line.find('\t'); tab != std::string_view::npos; tab = line.find('\t', start)) {
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  out.push_back(line.substr(start));
  return out;
}

}  // namespace

vectorizer::SparseVector TaskClassifier::vectorize(std::string_view text) const {
  return vectorizer::transform(textproc::ngrams(analyze(text, stoplist), vocab.range()), vocab,
                               features.l2_normalize);
}

double TaskClassifier::score(std::string_view text) const {
  return svm::decision(model, vectorize(text));
}

int TaskClassifier::predict(std::string_view text) const { return score(text) >= 0.0 ? 1 : 0; }

void save_model(const TaskClassifier& c, std::ostream& out) {
  const auto& cfg = c.model.config;
  out << kMagic << ' ' << kModelFormatVersion << '\n';
  out << "task " << to_char(c.task) << '\n';
  out << "ngram_range " << c.features.range.to_string() << '\n';
  out << "c " << format_double(cfg.c) << '\n';
  out << "tol " << format_double(cfg.tol) << '\n';
  out << "max_epochs " << cfg.max_epochs << '\n';
  out << "seed " << cfg.seed << '\n';
  out << "normalize " << (c.features.l2_normalize ? 1 : 0) << '\n';
  out << "smooth_idf " << (c.features.smooth_idf ? 1 : 0) << '\n';
  out << "min_df " << c.features.min_df << '\n';
  out << "stoplist_id " << c.stoplist.id() << '\n';
  out << "stoplist_hash " << to_hex(c.stoplist.content_hash()) << '\n';
  out << "converged " << (c.model.status.converged ? 1 : 0) << '\n';
  out << "epochs " << c.model.status.epochs << '\n';
  out << "duality_gap " << format_double(c.model.status.duality_gap) << '\n';
  out << "d_total " << c.vocab.d_total() << '\n';

  out << "stopwords " << c.stoplist.words().size() << '\n';
  for (const auto& word : c.stoplist.words()) out << word << '\n';

  out << "vocabulary " << c.vocab.size() << '\n';
  for (std::size_t i = 0; i < c.vocab.size(); ++i) {
    const auto& e = c.vocab.entries()[i];
    out << e.ngram << '\t' << i << '\t' << e.df << '\t' << format_double(e.idf) << '\n';
  }

  std::size_t nonzero = 0;
  for (double v : c.model.w) nonzero += v != 0.0 ? 1 : 0;
  out << "weights " << nonzero << '\n';
  for (std::size_t i = 0; i < c.model.w.size(); ++i) {
    if (c.model.w[i] != 0.0) out << i << '\t' << format_double(c.model.w[i]) << '\n';
  }
  out << "bias " << format_double(c.model.b) << '\n';
  out << "objective " << format_double(c.model.objective_at_convergence) << '\n';
  out << "end\n";
}

void save_model(const TaskClassifier& classifier, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model " + path.string());
  save_model(classifier, out);
  if (!out) throw IoError("failed writing model " + path.string());
}

TaskClassifier load_model(std::istream& in) {
  LineReader r(in);
  {
    const auto header = r.next();
    if (header.compare(0, kMagic.size() + 1, std::string(kMagic) + " ") != 0) {
      r.fail("not a picosvm model artifact");
    }
    const int version = r.number<int>(std::string_view(header).substr(kMagic.size() + 1));
    if (version != kModelFormatVersion) throw VersionError(version, kModelFormatVersion);
  }

  TaskClassifier c;
  const auto task = parse_task(r.value_of("task"));
  if (!task) r.fail("task must be P, I or O");
  c.task = *task;
  try {
    c.features.range = textproc::NGramRange::parse(r.value_of("ngram_range"));
  } catch (const ValidationError& e) {
    r.fail(e.what());
  }
  auto& cfg = c.model.config;
  cfg.task = c.task;
  cfg.c = r.number_of<double>("c");
  cfg.tol = r.number_of<double>("tol");
  cfg.max_epochs = r.number_of<int>("max_epochs");
  cfg.seed = r.number_of<std::uint64_t>("seed");
  c.features.l2_normalize = r.number_of<int>("normalize") != 0;
  c.features.smooth_idf = r.number_of<int>("smooth_idf") != 0;
  c.features.min_df = r.number_of<std::size_t>("min_df");
  const auto stoplist_id = r.value_of("stoplist_id");
  const auto stoplist_hash = r.value_of("stoplist_hash");
  c.model.status.converged = r.number_of<int>("converged") != 0;
  c.model.status.epochs = r.number_of<int>("epochs");
  c.model.status.duality_gap = r.number_of<double>("duality_gap");
  const auto d_total = r.number_of<std::size_t>("d_total");

  const auto n_stop = r.number_of<std::size_t>("stopwords");
  std::vector<std::string> words;
  words.reserve(n_stop);
  for (std::size_t i = 0; i < n_stop; ++i) words.push_back(r.next());
  c.stoplist = textproc::Stoplist(stoplist_id, std::move(words));
  if (to_hex(c.stoplist.content_hash()) != stoplist_hash) r.fail("stop-word list hash mismatch");

  const auto n_vocab = r.number_of<std::size_t>("vocabulary");
  std::vector<vectorizer::VocabEntry> entries;
  entries.reserve(n_vocab);
  for (std::size_t i = 0; i < n_vocab; ++i) {
    const auto line = r.next();
    const auto fields = split_tabs(line);
    if (fields.size() != 4) r.fail("vocabulary line needs 4 fields");
    if (r.number<std::size_t>(fields[1]) != i) r.fail("vocabulary index out of order");
    entries.push_back({std::string(fields[0]), r.number<std::size_t>(fields[2]),
                       r.number<double>(fields[3])});
  }
  try {
    c.vocab = vectorizer::Vocabulary(std::move(entries), d_total, c.features.range,
                                     c.features.smooth_idf, stoplist_id);
  } catch (const ValidationError& e) {
    r.fail(e.what());
  }

  c.model.w.assign(c.vocab.size(), 0.0);
  const auto n_weights = r.number_of<std::size_t>("weights");
  for (std::size_t i = 0; i < n_weights; ++i) {
    const auto line = r.next();
    const auto fields = split_tabs(line);
    if (fields.size() != 2) r.fail("weight line needs 2 fields");
    const auto index = r.number<std::size_t>(fields[0]);
    if (index >= c.model.w.size()) r.fail("weight index beyond vocabulary");
    c.model.w[index] = r.number<double>(fields[1]);
  }
  c.model.b = r.number_of<double>("bias");
  c.model.objective_at_convergence = r.number_of<double>("objective");
  if (r.next() != "end") r.fail("expected 'end'");
  return c;
}

TaskClassifier load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path.string());
  return load_model(in);
}

}  // namespace picosvm
