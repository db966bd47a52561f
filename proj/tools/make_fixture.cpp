// Regenerates the shipped synthetic fixture: a 200-document English corpus
// over 52 weeks with three planted keywords, a matching registry, and two
// monthly target files (five climate series, nine survey questions).
//
//   make_fixture [DIR]   (default: fixtures/synthetic)

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>

#include "sbsflow/csv.hpp"
#include "sbsflow/synthetic.hpp"

namespace {

using namespace sbsflow;

constexpr double kPi = 3.14159265358979323846;

void write_monthly(const std::string& path, const std::vector<std::string>& names, std::mt19937_64& rng) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  std::vector<std::string> header{"month"};
  header.insert(header.end(), names.begin(), names.end());
  csv::write_row(f, header);
  std::normal_distribution<double> noise(0.0, 1.5);
  std::uniform_real_distribution<double> level(95.0, 125.0), phase(0.0, 2 * kPi);
  std::vector<double> base, shift;
  for (std::size_t i = 0; i < names.size(); ++i) {
    base.push_back(level(rng));
    shift.push_back(phase(rng));
  }
  YearMonth m{2019, 1};
  for (int k = 0; k < 12; ++k, m = m.next()) {
    std::vector<std::string> row{format_year_month(m)};
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double v = base[i] + 4.0 * std::sin(2 * kPi * k / 12.0 + shift[i]) + noise(rng);
      row.push_back(csv::format_sig(std::round(v * 10) / 10, 6));
    }
    csv::write_row(f, row);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic fixture"};
  std::string dir = "fixtures/synthetic";
  std::uint64_t seed = 20190107;
  app.add_option("dir", dir, "output directory");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const Date start = *parse_date("2019-01-07");
  const std::size_t weeks = 52;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  PlantedKeyword tariffs{"tariffs", {}}, harvest{"harvest", {}}, fuel{"fuel prices", {}};
  for (std::size_t w = 0; w < weeks; ++w) {
    tariffs.weekly_rate.push_back(0.4 + 1.2 * (1 + std::sin(2 * kPi * static_cast<double>(w) / 13.0)) / 2);
    harvest.weekly_rate.push_back(unit(rng));
    fuel.weekly_rate.push_back(1.0);
  }

  SyntheticOptions opt;
  opt.seed = seed;
  opt.start = start;
  opt.weeks = weeks;
  opt.documents = 200;
  opt.keywords = {tariffs, harvest, fuel};
  auto corpus = generate_corpus(opt);

  // Records the ingest stage must exclude or reject.
  Document early{"early1", start - std::chrono::days(3), "Outside", "dated before the first window.", "synthetic"};
  Document late{"late1", start + std::chrono::days(7 * weeks + 2), "Outside", "dated after the last window.",
                "synthetic"};
  corpus.documents.push_back(early);
  corpus.documents.push_back(late);
  write_jsonl(corpus.documents, (fs::path(dir) / "corpus.jsonl").string());
  {
    std::ofstream f(fs::path(dir) / "corpus.jsonl", std::ios::app | std::ios::binary);
    f << R"({"id": "bad1", "date": "2019-13-40", "title": "Broken", "body": "invalid date.", "source": "synthetic"})"
      << '\n';
  }

  {
    std::ofstream f(fs::path(dir) / "keywords.reg", std::ios::binary | std::ios::trunc);
    f << "# Keywords planted by make_fixture.\n\n"
         "label: tariff\nmembers:\n  - tariff\n  - tariffs\n\n"
         "label: harvest\nmembers:\n  - harvest\n  - harvests\n\n"
         "label: fuel_price\nmembers:\n  - fuel price\n  - fuel prices\n";
  }

  write_monthly((fs::path(dir) / "climate.csv").string(), {"climate", "personal", "economic", "current", "future"},
                rng);
  write_monthly((fs::path(dir) / "questions.csv").string(),
                {"q1_italy_now", "q2_household_now", "q3_household_budget", "q4_savings_now", "q5_durables_now",
                 "q6_italy_next", "q7_unemployment_next", "q8_household_next", "q9_savings_next"},
                rng);

  nlohmann::ordered_json cfg{
      {"corpus", {{"path", "corpus.jsonl"}, {"format", "jsonl"}}},
      {"registry", "keywords.reg"},
      {"stopwords", "../stopwords_en.txt"},
      {"language", "english"},
      {"start", "2019-01-07"},
      {"end", "2020-01-06"},
      {"targets",
       {{{"group", "climate"}, {"path", "climate.csv"}}, {{"group", "questions"}, {"path", "questions.csv"}}}},
      {"output_dir", "out"},
  };
  std::ofstream(fs::path(dir) / "config.json", std::ios::binary | std::ios::trunc) << cfg.dump(2) << '\n';

  {
    std::ofstream f(fs::path(dir) / "truth.csv", std::ios::binary | std::ios::trunc);
    csv::write_row(f, {"week", "tariff", "harvest", "fuel_price"});
    for (std::size_t w = 0; w < weeks; ++w) {
      csv::write_row(f, {std::to_string(w), std::to_string(corpus.injected[0][w]),
                         std::to_string(corpus.injected[1][w]), std::to_string(corpus.injected[2][w])});
    }
  }
  std::cout << "wrote fixture to " << dir << " (" << corpus.documents.size() << " dated documents + 1 malformed)\n";
  return 0;
}
