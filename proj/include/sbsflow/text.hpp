#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sbsflow/stemmer.hpp"

namespace sbsflow {

struct TokenizeOptions {
  std::size_t min_token_length = 2;  // in code points; shorter tokens are dropped
  bool split_sentences = true;       // on '.', '!' and '?'
};

/// Lowercased runs of letters, grouped by sentence. Digits, punctuation and
/// every other non-letter act as separators. Empty sentences are omitted.
std::vector<std::vector<std::string>> tokenize_sentences(std::string_view text,
                                                         const TokenizeOptions& options = {});

/// Flattened form of `tokenize_sentences`.
std::vector<std::string> tokenize(std::string_view text, const TokenizeOptions& options = {});

using StopWords = std::unordered_set<std::string>;

/// One word per line, '#' starts a comment. Words are lowercased.
StopWords load_stopwords(const std::string& path);

struct Phrase {
  std::vector<std::string> keys;  // canonical keys of the phrase tokens
  std::string label;
};

/// Output of keyword_registry compilation, consumed by `Normalizer`.
struct CanonicalMap {
  std::unordered_map<std::string, std::string> tokens;  // stem -> label
  std::vector<Phrase> phrases;                         // longest first
  std::unordered_set<std::string> labels;
  // Labels that would not survive stemming + lookup unchanged. They are passed
  // through verbatim so normalization is a fixed point on its own output.
  std::unordered_set<std::string> protected_labels;

  std::string_view key_of(std::string_view stem) const;
};

/// Stop-word removal, stemming, phrase collapse and synonym canonicalization.
///
///   1. protected labels pass through; stop words are removed;
///   2. the remaining tokens are stemmed to a fixed point and mapped to their
///      canonical key (label when the stem belongs to a keyword set);
///   3. stems that are too short or are stop words are removed;
///   4. phrases are collapsed greedily, longest first.
class Normalizer {
 public:
  Normalizer(const StopWords& stopwords, const Stemmer& stemmer, const CanonicalMap& canon,
             std::size_t min_token_length = 2);

  std::vector<std::string> normalize(const std::vector<std::string>& tokens) const;

  const CanonicalMap& canonical_map() const noexcept { return canon_; }

 private:
  const StopWords& stopwords_;
  const Stemmer& stemmer_;
  const CanonicalMap& canon_;
  std::size_t min_length_;
};

/// Normalized tokens of one document. `sentence_starts` holds the offset of
/// each sentence; co-occurrences never cross these boundaries.
struct TokenSequence {
  std::string doc_id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> sentence_starts{0};
};

struct TextOptions {
  TokenizeOptions tokenize;
  bool include_title = true;
};

TokenSequence process_text(std::string doc_id, std::string_view text, const Normalizer& normalizer,
                           const TokenizeOptions& options = {});

struct CooccurrenceRecord {
  std::string word_a;
  std::string word_b;
  std::uint64_t count = 0;

  friend bool operator==(const CooccurrenceRecord&, const CooccurrenceRecord&) = default;
};

/// Unordered pairs of positions (p, q) with 0 < q - p < window_size and
/// distinct tokens, one increment each. Sorted by (word_a, word_b).
std::vector<CooccurrenceRecord> extract_cooccurrences(const TokenSequence& seq, std::size_t window_size);
std::vector<CooccurrenceRecord> extract_cooccurrences(const std::vector<std::string>& tokens,
                                                      std::size_t window_size);

/// Per-window token and pair counts. Merging is commutative and associative.
class WindowText {
 public:
  void add(const TokenSequence& seq, std::size_t window_size);
  void merge(const WindowText& other);

  std::size_t documents() const noexcept { return documents_; }
  std::uint64_t token_count() const noexcept { return tokens_; }

  /// Occurrences per token, ordered by token.
  std::map<std::string, std::uint64_t> prevalence() const;
  /// Aggregated records ordered by (word_a, word_b).
  std::vector<CooccurrenceRecord> records() const;

 private:
  std::uint32_t intern(const std::string& token);

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::uint64_t, std::uint64_t> pairs_;  // (lo << 32) | hi
  std::size_t documents_ = 0;
  std::uint64_t tokens_ = 0;
};

}  // namespace sbsflow
