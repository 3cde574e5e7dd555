// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "picosvm/errors.hpp"
#include "picosvm/hash.hpp"
#include "picosvm/shuffle.hpp"

namespace picosvm::corpus {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

// Largest-remainder apportionment of `total` items over the three ratios.
std::array<std::size_t, 3> apportion(std::size_t total, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.test, ratios.dev};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t part = 0; part < 3; ++part) {
    const double exact = r[part] * static_cast<double>(total);
    counts[part] = static_cast<std::size_t>(std::floor(exact));
    remainders[part] = exact - std::floor(exact);
    assigned += counts[part];
  }
  // Floating error can push the floors over the total when ratios sum to 1 + eps.
  while (assigned > total) {
    auto part = static_cast<std::size_t>(std::distance(
        counts.begin(), std::max_element(counts.begin(), counts.end())));
    --counts[part];
    --assigned;
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < total; i = (i + 1) % 3, ++assigned) ++counts[order[i]];
  return counts;
}

void validate_ratios(const SplitRatios& ratios) {
  for (double r : {ratios.train, ratios.test, ratios.dev}) {
    if (!std::isfinite(r) || r < 0.0) {
      throw ValidationError("split ratios must be non-negative, got " + std::to_string(r));
    }
  }
  const double sum = ratios.train + ratios.test + ratios.dev;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("split ratios must sum to 1, got " + std::to_string(sum));
  }
}

}  // namespace

Corpus ingest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return ingest(in, path.string());
}

Corpus ingest(std::istream& in, std::string source) {
  Corpus corpus;
  corpus.source = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCorpusHeader) {
        throw ParseError(line_no, "expected header 'pmid<TAB>heading<TAB>label<TAB>text'");
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw ParseError(line_no,
                       "expected 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    const auto label = parse_label(fields[2]);
    if (!label) {
      throw ValidationError("line " + std::to_string(line_no) + ": unknown label '" +
                            std::string(fields[2]) + "'");
    }
    if (is_blank(fields[3])) {
      throw ValidationError("line " + std::to_string(line_no) + ": empty sentence text");
    }
    corpus.sentences.push_back(LabeledSentence{std::string(fields[0]), std::string(fields[1]),
                                               *label, std::string(fields[3])});
  }
  if (line_no == 0) throw ParseError(1, "missing header row");
  return corpus;
}

Corpus filter_pio(const Corpus& corpus) {
  Corpus out;
  out.source = corpus.source;
  std::copy_if(corpus.sentences.begin(), corpus.sentences.end(), std::back_inserter(out.sentences),
               [](const LabeledSentence& s) { return to_task(s.label).has_value(); });
  return out;
}

std::vector<TaskInstance> binarize(const Corpus& corpus, Task task) {
  std::vector<TaskInstance> instances;
  instances.reserve(corpus.size());
  const Label positive = to_label(task);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& sentence = corpus.sentences[i];
    if (!to_task(sentence.label)) {
      throw ContractError(std::string("binarize expects a P/I/O-filtered corpus, found label ") +
                          to_char(sentence.label) + " at sentence " + std::to_string(i));
    }
    instances.push_back(TaskInstance{std::cref(sentence), i, task, sentence.label == positive ? 1 : 0});
  }
  return instances;
}

DataSplit stratified_split(std::span<const TaskInstance> instances, SplitRatios ratios,
                           std::uint64_t seed) {
  validate_ratios(ratios);
  if (instances.empty()) throw ValidationError("cannot split an empty instance list");

  DataSplit split;
  split.seed = seed;
  split.ratios = ratios;
  std::mt19937_64 rng(seed);
  for (int cls : {1, 0}) {
    std::vector<TaskInstance> members;
    std::copy_if(instances.begin(), instances.end(), std::back_inserter(members),
                 [cls](const TaskInstance& t) { return t.y == cls; });
    portable_shuffle(std::span<TaskInstance>(members), rng);
    const auto counts = apportion(members.size(), ratios);
    auto it = members.begin();
    for (auto [part, count] : {std::pair{&split.train, counts[0]}, std::pair{&split.test, counts[1]},
                               std::pair{&split.dev, counts[2]}}) {
      part->insert(part->end(), it, it + static_cast<std::ptrdiff_t>(count));
      it += static_cast<std::ptrdiff_t>(count);
    }
  }
  const auto by_ordinal = [](const TaskInstance& a, const TaskInstance& b) {
    return a.ordinal < b.ordinal;
  };
  for (auto* part : {&split.train, &split.test, &split.dev}) {
    std::sort(part->begin(), part->end(), by_ordinal);
  }
  return split;
}

std::uint64_t DataSplit::fingerprint() const {
  Fnv1a hash;
  std::uint64_t part_id = 0;
  for (const auto* part : {&train, &test, &dev}) {
    hash.update(part_id++).update(static_cast<std::uint64_t>(part->size()));
    for (const auto& instance : *part) {
      hash.update(static_cast<std::uint64_t>(index_of(instance.task)))
          .update(static_cast<std::uint64_t>(instance.ordinal))
          .update(static_cast<std::uint64_t>(instance.y));
    }
  }
  return hash.digest();
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats{};
  std::array<std::unordered_set<std::string>, 7> pmids;
  for (const auto& sentence : corpus.sentences) {
    const auto idx = index_of(sentence.label);
    ++stats[idx].sentences;
    pmids[idx].insert(sentence.pmid);
  }
  for (std::size_t i = 0; i < stats.size(); ++i) stats[i].abstracts = pmids[i].size();
  return stats;
}

std::vector<std::pair<std::string, std::size_t>> top_k_words(const Corpus& corpus, Label label,
                                                              std::size_t k,
                                                              const textproc::Stoplist& stoplist) {
  if (k == 0) throw ValidationError("top_k_words needs k >= 1");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus.sentences) {
    if (sentence.label != label) continue;
    for (auto& token : textproc::remove_stopwords(textproc::tokenize(sentence.text), stoplist)) {
      ++counts[std::move(token)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  const auto before = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const auto keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    before);
  ranked.resize(keep);
  return ranked;
}

std::uint64_t content_hash(const Corpus& corpus) {
  Fnv1a hash;
  for (const auto& s : corpus.sentences) {
    hash.update(s.pmid).update("\t").update(s.heading).update("\t");
    const char label = to_char(s.label);
    hash.update(std::string_view(&label, 1)).update("\t");
    hash.update(s.text).update("\n");
  }
  return hash.digest();
}

}  // namespace picosvm::corpus
