#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbsflow/stemmer.hpp"
#include "sbsflow/text.hpp"

namespace sbsflow {

/// A keyword label with its surface forms. Members may be multi-word phrases.
struct KeywordSet {
  std::string label;
  std::vector<std::string> members;
  std::size_t line = 0;                   // line of the `label:` entry
  std::vector<std::size_t> member_lines;  // parallel to `members`
};

/// Registry grammar (UTF-8, one block per set):
///
///   # comment
///   label: interest_rate
///   members:
///     - interest rate
///     - interest rates
///
/// Labels are lowercase without whitespace. Member forms are compared
/// case-insensitively after collapsing runs of whitespace. Duplicate labels
/// and surface forms claimed by two sets are fatal; the error names both
/// lines.
std::vector<KeywordSet> parse_registry(std::istream& in, const std::string& origin = "<registry>");
std::vector<KeywordSet> parse_registry_file(const std::string& path);

struct CanonicalOptions {
  std::size_t min_token_length = 2;
};

/// Builds the single-token map (stem -> label) and the phrase table used by
/// `Normalizer`. Members are tokenized, stop-filtered and stemmed exactly as
/// document text is. Throws InputError when a member reduces to nothing or
/// when one stem or phrase would map to two labels.
CanonicalMap compile_canonical_map(const std::vector<KeywordSet>& sets, const Stemmer& stemmer,
                                   const StopWords& stopwords, const CanonicalOptions& options = {});

std::vector<std::string> labels_of(const std::vector<KeywordSet>& sets);

}  // namespace sbsflow
