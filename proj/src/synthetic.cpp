#include "sbsflow/synthetic.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "sbsflow/error.hpp"

namespace sbsflow {

namespace {

std::vector<std::string> make_vocabulary(std::mt19937_64& rng, const SyntheticOptions& o) {
  static constexpr char consonants[] = "bdfgklmnprstvz";
  static constexpr char vowels[] = "aeiou";
  std::uniform_int_distribution<int> c(0, sizeof consonants - 2), v(0, sizeof vowels - 2);
  std::set<std::string> seen;
  std::vector<std::string> words;
  std::size_t attempts = 0;
  while (words.size() < o.vocabulary) {
    if (++attempts > 100 * (o.vocabulary + 10)) throw InputError("cannot draw enough distinct background words");
    std::string w;
    for (int s = 0; s < 3; ++s) {
      w.push_back(consonants[c(rng)]);
      w.push_back(vowels[v(rng)]);
    }
    if (o.reserved.contains(w) || !seen.insert(w).second) continue;
    words.push_back(std::move(w));
  }
  return words;
}

}  // namespace

SyntheticCorpus generate_corpus(const SyntheticOptions& o) {
  if (o.weeks == 0) throw InputError("synthetic corpus needs at least one week");
  for (const auto& k : o.keywords) {
    if (k.weekly_rate.size() != o.weeks) throw InputError("rate series for '" + k.form + "' must cover every week");
  }
  std::mt19937_64 rng(o.seed);
  SyntheticCorpus out;
  out.vocabulary = make_vocabulary(rng, o);
  out.injected.assign(o.keywords.size(), std::vector<std::uint64_t>(o.weeks, 0));

  std::vector<double> zipf(out.vocabulary.size());
  for (std::size_t i = 0; i < zipf.size(); ++i) zipf[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<std::size_t> pick(zipf.begin(), zipf.end());
  std::uniform_int_distribution<int> day(0, 6);

  for (std::size_t d = 0; d < o.documents; ++d) {
    const std::size_t week = d * o.weeks / o.documents;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < o.words_per_document; ++i) words.push_back(out.vocabulary[pick(rng)]);
    for (std::size_t k = 0; k < o.keywords.size(); ++k) {
      std::poisson_distribution<unsigned> count(std::max(0.0, o.keywords[k].weekly_rate[week]));
      const unsigned n = o.keywords[k].weekly_rate[week] > 0 ? count(rng) : 0;
      for (unsigned i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> at(0, words.size());
        words.insert(words.begin() + static_cast<std::ptrdiff_t>(at(rng)), o.keywords[k].form);
      }
      out.injected[k][week] += n;
    }

    Document doc;
    doc.id = "doc" + std::to_string(d + 1);
    doc.published_at = o.start + std::chrono::days(7 * static_cast<long>(week) + day(rng));
    for (int i = 0; i < 3; ++i) doc.title += (i ? " " : "") + out.vocabulary[pick(rng)];
    doc.title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(doc.title[0])));
    const std::size_t per = std::max<std::size_t>(1, o.words_per_sentence);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i % per != 0) {
        doc.body += ' ';
      } else if (i) {
        doc.body += ". ";
      }
      doc.body += words[i];
    }
    if (!doc.body.empty()) doc.body += '.';
    doc.source = "synthetic";
    out.documents.push_back(std::move(doc));
  }
  return out;
}

void write_jsonl(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  for (const auto& d : docs) {
    nlohmann::ordered_json j{{"id", d.id}, {"date", format_date(d.published_at)}, {"title", d.title},
                             {"body", d.body}, {"source", d.source}};
    f << j.dump() << '\n';
  }
}

}  // namespace sbsflow
