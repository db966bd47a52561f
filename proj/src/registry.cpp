#include "sbsflow/registry.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sbsflow/error.hpp"
#include "sbsflow/utf8.hpp"

namespace sbsflow {
namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Lowercase with whitespace runs collapsed to one space.
std::string surface_key(std::string_view form) {
  std::u32string out;
  bool space = false;
  for (char32_t c : utf8::decode(form)) {
    if (c == U' ' || c == U'\t') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(U' ');
    space = false;
    out.push_back(utf8::to_lower(c));
  }
  return utf8::encode(out);
}

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char32_t c : utf8::decode(label)) {
    if (c == U' ' || c == U'\t' || c == 0xFFFD) return false;
    if (utf8::to_lower(c) != c) return false;
  }
  return true;
}

std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

std::vector<KeywordSet> parse_registry(std::istream& in, const std::string& origin) {
  std::vector<KeywordSet> sets;
  std::map<std::string, std::size_t> label_lines;
  std::map<std::string, std::pair<std::string, std::size_t>> forms;  // surface -> (label, line)
  bool in_members = false;
  std::string raw;
  std::size_t line_no = 0;

  auto where = [&](std::size_t line) { return origin + ":" + std::to_string(line); };
  auto fail = [&](const std::string& msg) { throw InputError(where(line_no) + ": " + msg); };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.rfind("label:", 0) == 0) {
      std::string label = strip_quotes(trim(std::string_view(line).substr(6)));
      if (!valid_label(label)) fail("invalid label '" + label + "' (lowercase, no whitespace)");
      if (auto it = label_lines.find(label); it != label_lines.end()) {
        fail("duplicate label '" + label + "', first defined at " + where(it->second));
      }
      if (!sets.empty() && sets.back().members.empty()) {
        throw InputError(where(sets.back().line) + ": set '" + sets.back().label + "' has no members");
      }
      label_lines.emplace(label, line_no);
      sets.push_back({label, {}, line_no, {}});
      in_members = false;
      continue;
    }
    if (line.rfind("members:", 0) == 0) {
      if (sets.empty()) fail("'members:' before any 'label:'");
      if (!trim(std::string_view(line).substr(8)).empty()) fail("members must be listed one per line as '- form'");
      in_members = true;
      continue;
    }
    if (line.front() == '-') {
      if (!in_members) fail("list item outside a 'members:' block");
      std::string form = strip_quotes(trim(std::string_view(line).substr(1)));
      std::string key = surface_key(form);
      if (key.empty()) fail("empty member in set '" + sets.back().label + "'");
      auto [it, inserted] = forms.try_emplace(key, sets.back().label, line_no);
      if (!inserted) {
        fail("surface form '" + form + "' of set '" + sets.back().label + "' already claimed by set '" +
             it->second.first + "' at " + where(it->second.second));
      }
      sets.back().members.push_back(key);
      sets.back().member_lines.push_back(line_no);
      continue;
    }
    fail("unrecognized line '" + line + "'");
  }
  if (!sets.empty() && sets.back().members.empty()) {
    throw InputError(where(sets.back().line) + ": set '" + sets.back().label + "' has no members");
  }
  return sets;
}

std::vector<KeywordSet> parse_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read keyword registry " + path);
  return parse_registry(in, path);
}

CanonicalMap compile_canonical_map(const std::vector<KeywordSet>& sets, const Stemmer& stemmer,
                                   const StopWords& stopwords, const CanonicalOptions& options) {
  CanonicalMap canon;
  std::map<std::string, std::pair<std::string, std::size_t>> stem_owner;
  struct PendingPhrase {
    std::vector<std::string> stems;
    std::string label;
    std::size_t line;
  };
  std::vector<PendingPhrase> pending;

  TokenizeOptions tok;
  tok.min_token_length = options.min_token_length;
  tok.split_sentences = false;

  for (const auto& set : sets) {
    canon.labels.insert(set.label);
    for (std::size_t m = 0; m < set.members.size(); ++m) {
      std::size_t line = m < set.member_lines.size() ? set.member_lines[m] : set.line;
      std::vector<std::string> stems;
      for (const auto& t : tokenize(set.members[m], tok)) {
        if (stopwords.contains(t)) continue;
        std::string s = stemmer.stem_stable(t);
        if (utf8::decode(s).size() < options.min_token_length || stopwords.contains(s)) continue;
        stems.push_back(std::move(s));
      }
      if (stems.empty()) {
        throw InputError("member '" + set.members[m] + "' of set '" + set.label + "' (line " +
                         std::to_string(line) + ") reduces to nothing after stop-word removal and stemming");
      }
      if (stems.size() > 1) {
        pending.push_back({std::move(stems), set.label, line});
        continue;
      }
      auto [it, inserted] = stem_owner.try_emplace(stems[0], set.label, line);
      if (!inserted && it->second.first != set.label) {
        throw InputError("stem '" + stems[0] + "' of member '" + set.members[m] + "' (set '" + set.label +
                         "', line " + std::to_string(line) + ") collides with set '" + it->second.first +
                         "' (line " + std::to_string(it->second.second) + ")");
      }
      canon.tokens.emplace(stems[0], set.label);
    }
  }

  std::set<std::string> phrase_labels;
  std::map<std::vector<std::string>, std::pair<std::string, std::size_t>> phrase_owner;
  for (auto& p : pending) {
    Phrase phrase;
    for (const auto& s : p.stems) phrase.keys.emplace_back(canon.key_of(s));
    phrase.label = p.label;
    auto [it, inserted] = phrase_owner.try_emplace(phrase.keys, p.label, p.line);
    if (!inserted) {
      if (it->second.first != p.label) {
        throw InputError("phrase of set '" + p.label + "' (line " + std::to_string(p.line) +
                         ") normalizes to the same tokens as a phrase of set '" + it->second.first + "' (line " +
                         std::to_string(it->second.second) + ")");
      }
      continue;
    }
    phrase_labels.insert(p.label);
    canon.phrases.push_back(std::move(phrase));
  }
  // A phrase built on top of another phrase's label would only match on a
  // second pass, breaking idempotence.
  for (const auto& phrase : canon.phrases) {
    for (const auto& k : phrase.keys) {
      if (phrase_labels.contains(k)) {
        throw InputError("phrase of set '" + phrase.label + "' contains '" + k +
                         "', which is itself produced by a phrase");
      }
    }
  }
  std::sort(canon.phrases.begin(), canon.phrases.end(), [](const Phrase& a, const Phrase& b) {
    if (a.keys.size() != b.keys.size()) return a.keys.size() > b.keys.size();
    return a.keys < b.keys;
  });

  for (const auto& label : canon.labels) {
    auto toks = tokenize(label, tok);
    bool natural = toks.size() == 1 && toks[0] == label && !stopwords.contains(label);
    if (natural) {
      std::string s = stemmer.stem_stable(label);
      natural = !stopwords.contains(s) && utf8::decode(s).size() >= options.min_token_length &&
                canon.key_of(s) == label;
    }
    if (!natural) canon.protected_labels.insert(label);
  }
  return canon;
}

std::vector<std::string> labels_of(const std::vector<KeywordSet>& sets) {
  std::vector<std::string> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(s.label);
  return out;
}

}  // namespace sbsflow
