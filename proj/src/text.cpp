#include "sbsflow/text.hpp"

#include <algorithm>
#include <fstream>

#include "sbsflow/error.hpp"
#include "sbsflow/utf8.hpp"

namespace sbsflow {

std::vector<std::vector<std::string>> tokenize_sentences(std::string_view text, const TokenizeOptions& options) {
  std::vector<std::vector<std::string>> sentences(1);
  std::u32string word;
  auto flush_word = [&] {
    if (!word.empty() && word.size() >= options.min_token_length) {
      sentences.back().push_back(utf8::encode(word));
    }
    word.clear();
  };
  for (char32_t c : utf8::decode(text)) {
    if (utf8::is_letter(c)) {
      word.push_back(utf8::to_lower(c));
      continue;
    }
    flush_word();
    if (options.split_sentences && (c == U'.' || c == U'!' || c == U'?') && !sentences.back().empty()) {
      sentences.emplace_back();
    }
  }
  flush_word();
  if (sentences.back().empty()) sentences.pop_back();
  return sentences;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizeOptions& options) {
  std::vector<std::string> out;
  for (auto& sentence : tokenize_sentences(text, options)) {
    std::move(sentence.begin(), sentence.end(), std::back_inserter(out));
  }
  return out;
}

StopWords load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stop-word list " + path);
  StopWords words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::u32string w = utf8::decode(std::string_view(line).substr(first, last - first + 1));
    for (auto& c : w) c = utf8::to_lower(c);
    words.insert(utf8::encode(w));
  }
  return words;
}

std::string_view CanonicalMap::key_of(std::string_view stem) const {
  auto it = tokens.find(std::string(stem));
  return it == tokens.end() ? stem : std::string_view(it->second);
}

Normalizer::Normalizer(const StopWords& stopwords, const Stemmer& stemmer, const CanonicalMap& canon,
                       std::size_t min_token_length)
    : stopwords_(stopwords), stemmer_(stemmer), canon_(canon), min_length_(min_token_length) {}

std::vector<std::string> Normalizer::normalize(const std::vector<std::string>& tokens) const {
  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (canon_.protected_labels.contains(t)) {
      keys.push_back(t);
      continue;
    }
    if (t.empty() || stopwords_.contains(t)) continue;
    std::string stem = stemmer_.stem_stable(t);
    if (utf8::decode(stem).size() < min_length_ || stopwords_.contains(stem)) continue;
    keys.emplace_back(canon_.key_of(stem));
  }
  if (canon_.phrases.empty()) return keys;

  std::vector<std::string> out;
  out.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size();) {
    const Phrase* hit = nullptr;
    for (const auto& p : canon_.phrases) {
      if (p.keys.size() > keys.size() - i) continue;
      if (std::equal(p.keys.begin(), p.keys.end(), keys.begin() + static_cast<std::ptrdiff_t>(i))) {
        hit = &p;
        break;
      }
    }
    if (hit) {
      out.push_back(hit->label);
      i += hit->keys.size();
    } else {
      out.push_back(std::move(keys[i]));
      ++i;
    }
  }
  return out;
}

TokenSequence process_text(std::string doc_id, std::string_view text, const Normalizer& normalizer,
                           const TokenizeOptions& options) {
  TokenSequence seq;
  seq.doc_id = std::move(doc_id);
  seq.sentence_starts.clear();
  for (const auto& sentence : tokenize_sentences(text, options)) {
    auto normalized = normalizer.normalize(sentence);
    if (normalized.empty()) continue;
    seq.sentence_starts.push_back(seq.tokens.size());
    std::move(normalized.begin(), normalized.end(), std::back_inserter(seq.tokens));
  }
  if (seq.sentence_starts.empty()) seq.sentence_starts.push_back(0);
  return seq;
}

namespace {

template <typename Emit>
void for_each_pair(const TokenSequence& seq, std::size_t window_size, Emit&& emit) {
  const auto& t = seq.tokens;
  for (std::size_t s = 0; s < seq.sentence_starts.size(); ++s) {
    std::size_t begin = seq.sentence_starts[s];
    std::size_t end = s + 1 < seq.sentence_starts.size() ? seq.sentence_starts[s + 1] : t.size();
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t q = p + 1; q < end && q - p < window_size; ++q) {
        if (t[p] != t[q]) emit(t[p], t[q]);
      }
    }
  }
}

}  // namespace

std::vector<CooccurrenceRecord> extract_cooccurrences(const TokenSequence& seq, std::size_t window_size) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for_each_pair(seq, window_size, [&](const std::string& a, const std::string& b) {
    ++counts[a < b ? std::make_pair(a, b) : std::make_pair(b, a)];
  });
  std::vector<CooccurrenceRecord> out;
  out.reserve(counts.size());
  for (auto& [key, n] : counts) out.push_back({key.first, key.second, n});
  return out;
}

std::vector<CooccurrenceRecord> extract_cooccurrences(const std::vector<std::string>& tokens,
                                                      std::size_t window_size) {
  TokenSequence seq;
  seq.tokens = tokens;
  return extract_cooccurrences(seq, window_size);
}

std::uint32_t WindowText::intern(const std::string& token) {
  auto [it, inserted] = ids_.try_emplace(token, static_cast<std::uint32_t>(names_.size()));
  if (inserted) {
    names_.push_back(token);
    counts_.push_back(0);
  }
  return it->second;
}

void WindowText::add(const TokenSequence& seq, std::size_t window_size) {
  ++documents_;
  tokens_ += seq.tokens.size();
  std::vector<std::uint32_t> ids;
  ids.reserve(seq.tokens.size());
  for (const auto& t : seq.tokens) {
    ids.push_back(intern(t));
    ++counts_[ids.back()];
  }
  for (std::size_t s = 0; s < seq.sentence_starts.size(); ++s) {
    std::size_t begin = seq.sentence_starts[s];
    std::size_t end = s + 1 < seq.sentence_starts.size() ? seq.sentence_starts[s + 1] : ids.size();
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t q = p + 1; q < end && q - p < window_size; ++q) {
        auto a = ids[p], b = ids[q];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        ++pairs_[(std::uint64_t{a} << 32) | b];
      }
    }
  }
}

void WindowText::merge(const WindowText& other) {
  documents_ += other.documents_;
  tokens_ += other.tokens_;
  std::vector<std::uint32_t> remap(other.names_.size());
  for (std::size_t i = 0; i < other.names_.size(); ++i) {
    remap[i] = intern(other.names_[i]);
    counts_[remap[i]] += other.counts_[i];
  }
  for (const auto& [key, n] : other.pairs_) {
    auto a = remap[key >> 32], b = remap[key & 0xffffffffu];
    if (a > b) std::swap(a, b);
    pairs_[(std::uint64_t{a} << 32) | b] += n;
  }
}

std::map<std::string, std::uint64_t> WindowText::prevalence() const {
  std::map<std::string, std::uint64_t> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (counts_[i] > 0) out.emplace(names_[i], counts_[i]);
  }
  return out;
}

std::vector<CooccurrenceRecord> WindowText::records() const {
  std::vector<CooccurrenceRecord> out;
  out.reserve(pairs_.size());
  for (const auto& [key, n] : pairs_) {
    const auto& a = names_[key >> 32];
    const auto& b = names_[key & 0xffffffffu];
    if (a < b) {
      out.push_back({a, b, n});
    } else {
      out.push_back({b, a, n});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.word_a, x.word_b) < std::tie(y.word_a, y.word_b);
  });
  return out;
}

}  // namespace sbsflow
