#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sbsflow {

enum class Language { English, Italian };

std::optional<Language> parse_language(std::string_view name);
std::string_view language_name(Language lang) noexcept;

/// Suffix-stripping stemmer over lowercase UTF-8 words.
class Stemmer {
 public:
  virtual ~Stemmer() = default;

  /// One application of the algorithm.
  virtual std::string stem(std::string_view word) const = 0;

  /// Re-applies `stem` until the output stops changing. Porter-family
  /// stemmers are not idempotent on a few inputs ("agreed" -> "agre" ->
  /// "agr"); the pipeline uses this form so that normalized tokens are fixed
  /// points of normalization.
  std::string stem_stable(std::string_view word) const;
};

/// Original Porter (1980) algorithm, as published with the Snowball project.
class PorterStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override;
};

/// Snowball Italian stemmer.
class ItalianStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override;
};

std::unique_ptr<Stemmer> make_stemmer(Language lang);

}  // namespace sbsflow
