#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "sbsflow/error.hpp"
#include "sbsflow/registry.hpp"
#include "support.hpp"

using namespace sbsflow;

namespace {

std::vector<KeywordSet> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_registry(in, "reg");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

struct English {
  std::unique_ptr<Stemmer> stemmer = make_stemmer(Language::English);
  StopWords stop = load_stopwords(testing::fixture("stopwords_en.txt"));
};

}  // namespace

TEST_CASE("registry grammar") {
  auto sets = parse(
      "# comment\n"
      "label: interest_rate\n"
      "members:\n"
      "  - interest rate\n"
      "  - \"interest rates\"\n"
      "\n"
      "label: covid   # trailing comment\n"
      "members:\n"
      "  - covid\n");
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].label == "interest_rate");
  CHECK(sets[0].members == std::vector<std::string>{"interest rate", "interest rates"});
  CHECK(sets[0].line == 2);
  CHECK(sets[0].member_lines == std::vector<std::size_t>{4, 5});
  CHECK(sets[1].members == std::vector<std::string>{"covid"});
}

TEST_CASE("empty registry") {
  CHECK(parse("").empty());
  CHECK(parse("# only comments\n\n").empty());
}

TEST_CASE("shared surface form is fatal and names both lines") {
  auto msg = error_of("label: money\nmembers:\n  - euro\nlabel: currency\nmembers:\n  - dollar\n  - Euro\n");
  CHECK(msg.find("Euro") != std::string::npos);
  CHECK(msg.find("reg:3") != std::string::npos);
  CHECK(msg.find("reg:7") != std::string::npos);
}

TEST_CASE("duplicate label is fatal and names both lines") {
  auto msg = error_of("label: a\nmembers:\n  - x\nlabel: a\nmembers:\n  - y\n");
  CHECK(msg.find("reg:1") != std::string::npos);
  CHECK(msg.find("reg:4") != std::string::npos);
}

TEST_CASE("malformed registries") {
  CHECK(!error_of("label: Has Space\nmembers:\n  - x\n").empty());
  CHECK(!error_of("label: a\nmembers:\n").empty());
  CHECK(!error_of("members:\n  - x\n").empty());
  CHECK(!error_of("label: a\nmembers:\n  - x\nrandom text\n").empty());
  CHECK_THROWS_AS(parse_registry_file("/nonexistent.reg"), InputError);
}

TEST_CASE("survey registry fixture has 29 sets with covid and lockdown singletons") {
  auto sets = parse_registry_file(testing::fixture("keywords_survey.reg"));
  CHECK(sets.size() == 29);
  auto labels = labels_of(sets);
  for (const char* l : {"covid", "lockdown", "interest_rate", "public_sector", "holidays", "pc"}) {
    CHECK(std::find(labels.begin(), labels.end(), l) != labels.end());
  }
}

TEST_CASE("full registry fixture has 59 sets") {
  auto sets = parse_registry_file(testing::fixture("keywords_full.reg"));
  CHECK(sets.size() == 59);
  CHECK(sets.front().label == "covid");
  CHECK(sets.back().label == "confindustria");
}

TEST_CASE("compile canonical map") {
  English en;
  auto canon = compile_canonical_map({{"covid", {"covid", "coronavirus"}, 1, {2, 3}},
                                      {"interest_rate", {"interest rate"}, 4, {5}},
                                      {"savings", {"saving", "savings"}, 6, {7, 8}}},
                                     *en.stemmer, en.stop);
  CHECK(canon.tokens.at(en.stemmer->stem("covid")) == "covid");
  CHECK(canon.tokens.at(en.stemmer->stem("coronavirus")) == "covid");
  REQUIRE(canon.phrases.size() == 1);
  CHECK(canon.phrases[0].keys == std::vector<std::string>{"interest", "rate"});
  CHECK(canon.phrases[0].label == "interest_rate");
  CHECK(en.stemmer->stem("saving") == en.stemmer->stem("savings"));
  CHECK(std::count_if(canon.tokens.begin(), canon.tokens.end(),
                      [](const auto& kv) { return kv.second == "savings"; }) == 1);
}

TEST_CASE("stems colliding onto different labels are fatal") {
  English en;
  CHECK_THROWS_AS(compile_canonical_map({{"a", {"saving"}, 1, {2}}, {"b", {"savings"}, 3, {4}}}, *en.stemmer, en.stop),
                  InputError);
  CHECK_THROWS_AS(compile_canonical_map({{"a", {"the"}, 1, {2}}}, *en.stemmer, en.stop), InputError);
}

TEST_CASE("invariant: keyword_registry: canonicalization is a function") {
  English en;
  for (const char* file : {"keywords_survey.reg", "keywords_full.reg"}) {
    auto sets = parse_registry_file(testing::fixture(file));
    auto canon = compile_canonical_map(sets, *en.stemmer, en.stop);
    // Each surface member resolves to exactly one label, and it is its own.
    Normalizer n(en.stop, *en.stemmer, canon);
    for (const auto& s : sets) {
      for (const auto& m : s.members) {
        auto out = n.normalize(tokenize(m));
        REQUIRE(out.size() == 1);
        CHECK(out[0] == s.label);
      }
    }
    // No phrase key sequence appears twice.
    for (std::size_t i = 0; i < canon.phrases.size(); ++i) {
      for (std::size_t j = i + 1; j < canon.phrases.size(); ++j) {
        CHECK((canon.phrases[i].keys != canon.phrases[j].keys || canon.phrases[i].label == canon.phrases[j].label));
      }
    }
  }
}

TEST_CASE("invariant: keyword_registry: round trip") {
  English en;
  for (const char* file : {"keywords_survey.reg", "keywords_full.reg"}) {
    auto sets = parse_registry_file(testing::fixture(file));
    auto canon = compile_canonical_map(sets, *en.stemmer, en.stop);
    Normalizer n(en.stop, *en.stemmer, canon);
    for (const auto& s : sets) {
      for (const auto& m : s.members) {
        auto seq = process_text("d", "Yesterday the " + m + " was discussed.", n);
        CHECK(std::count(seq.tokens.begin(), seq.tokens.end(), s.label) == 1);
      }
    }
  }
}
