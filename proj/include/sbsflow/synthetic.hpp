#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "sbsflow/calendar.hpp"
#include "sbsflow/corpus.hpp"

namespace sbsflow {

/// A surface form injected into generated documents. `weekly_rate[w]` is the
/// expected number of injections per document in week w (Poisson).
struct PlantedKeyword {
  std::string form;
  std::vector<double> weekly_rate;
};

struct SyntheticOptions {
  std::uint64_t seed = 1;
  Date start{};
  std::size_t weeks = 52;
  std::size_t documents = 200;        // spread evenly over the weeks
  std::size_t vocabulary = 400;       // background word types
  std::size_t words_per_document = 40;
  std::size_t words_per_sentence = 10;
  std::vector<PlantedKeyword> keywords;
  std::unordered_set<std::string> reserved;  // never used as background words
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  std::vector<std::string> vocabulary;
  std::vector<std::vector<std::uint64_t>> injected;  // [keyword][week]
};

/// Background words are made-up CVCVCV strings drawn with Zipf weights, so
/// they cannot collide with real keywords unless listed in `reserved`.
SyntheticCorpus generate_corpus(const SyntheticOptions& options);

void write_jsonl(const std::vector<Document>& docs, const std::string& path);

}  // namespace sbsflow
