#include "sbsflow/pipeline.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>

#include "sbsflow/causality.hpp"
#include "sbsflow/csv.hpp"
#include "sbsflow/error.hpp"
#include "sbsflow/parallel.hpp"
#include "sbsflow/registry.hpp"
#include "sbsflow/text.hpp"

namespace sbsflow {

namespace fs = std::filesystem;

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::Run: return "run";
    case Command::Score: return "score";
    case Command::Test: return "test";
  }
  return "run";
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 initialization failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (unsigned char c : name) {
    out.push_back(std::isalnum(c) || c == '_' || c == '-' || c == '.' ? static_cast<char>(c) : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "series";
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "sbsflow";
  j["command"] = command;
  j["status"] = ok ? "ok" : "failed";
  if (!ok) {
    j["failed_stage"] = failed_stage;
    j["error"] = error;
  }
  j["config"] = {{"path", config_path}, {"sha256", config_sha256}};
  j["workers"] = workers;
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts) j["counts"][k] = v;
  j["timings_ms"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : timings_ms) j["timings_ms"][k] = v;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

namespace {

const std::vector<std::string> kScoreHeader{"window_index", "week_start",       "keyword",
                                            "prevalence_raw", "diversity_raw",  "connectivity_raw",
                                            "z_prevalence", "z_diversity",     "z_connectivity",
                                            "sbs"};

constexpr const char* kSmoothnessNote =
    "weekly targets are cubic-spline interpolations of monthly values and are serially smooth by construction; "
    "F tests treat every interpolated week as an observation";

struct TargetGroupData {
  std::string group;
  std::vector<WeeklySeries> series;
};

class Pipeline {
 public:
  Pipeline(const RunConfig& cfg, RunManifest& manifest) : cfg_(cfg), m_(manifest), out_(cfg.output_dir) {}

  void run(Command command) {
    fs::create_directories(out_);
    if (command != Command::Test) {
      stage("ingest", [&] { ingest(); });
      stage("windows", [&] { windows(); });
      stage("text", [&] { text(); });
      stage("graph", [&] { graph(); });
      stage("sbs", [&] { score(); });
      stage("targets", [&] { targets(); });
    }
    if (command != Command::Score) {
      stage("causality", [&] {
        if (command == Command::Test) load_previous();
        causality();
      });
    }
  }

  void finish_files() {
    for (const auto& rel : written_) {
      const auto full = (out_ / rel).string();
      m_.files.push_back({rel, sha256_file(full), fs::file_size(full)});
    }
  }

  const std::string& current_stage() const noexcept { return current_; }

 private:
  template <typename F>
  void stage(const char* name, F&& body) {
    current_ = name;
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    m_.timings_ms.emplace_back(name, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }

  std::ofstream open(const std::string& rel) {
    fs::path full = out_ / rel;
    fs::create_directories(full.parent_path());
    std::ofstream f(full, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + full.string());
    written_.push_back(rel);
    return f;
  }

  void load_text_resources() {
    if (stemmer_) return;
    sets_ = parse_registry_file(cfg_.registry_path);
    keywords_ = labels_of(sets_);
    stopwords_ = load_stopwords(cfg_.stopwords_path);
    stemmer_ = make_stemmer(cfg_.language);
    canon_ = compile_canonical_map(sets_, *stemmer_, stopwords_, {cfg_.min_token_length});
  }

  void ingest() {
    auto loaded = load_corpus(cfg_.corpus_path, cfg_.ingest);
    m_.counts["records"] = loaded.records;
    m_.counts["documents"] = loaded.documents.size();
    m_.counts["rejects"] = loaded.rejects.size();
    auto f = open("rejects.csv");
    csv::write_row(f, {"line", "reason"});
    for (const auto& r : loaded.rejects) csv::write_row(f, {std::to_string(r.line), r.reason});
    documents_ = std::move(loaded.documents);
  }

  void windows() {
    corpus_ = assign_windows(std::move(documents_), cfg_.start, cfg_.end);
    m_.counts["windows"] = corpus_.windows.size();
    m_.counts["assigned"] = corpus_.assigned();
    m_.counts["excluded"] = corpus_.excluded;
    for (const auto& w : corpus_.windows) week_start_.push_back(format_date(w.start_date));
  }

  void text() {
    load_text_resources();
    m_.counts["keywords"] = keywords_.size();
    Normalizer normalizer(stopwords_, *stemmer_, canon_, cfg_.min_token_length);
    TokenizeOptions tok{cfg_.min_token_length, cfg_.split_sentences};
    texts_.assign(corpus_.windows.size(), {});
    parallel_for(corpus_.windows.size(), cfg_.workers, [&](std::size_t w) {
      for (const auto& doc : corpus_.documents[w]) {
        texts_[w].add(process_text(doc.id, doc.analysis_text(cfg_.include_title), normalizer, tok), cfg_.window_size);
      }
    });
    std::uint64_t tokens = 0;
    for (const auto& t : texts_) tokens += t.token_count();
    m_.counts["tokens"] = tokens;
  }

  void graph() {
    if (corpus_.assigned() == 0) {
      throw InputError("no documents fall in window range [" + format_date(cfg_.start) + ", " +
                       format_date(cfg_.end) + ")");
    }
    const std::size_t n = corpus_.windows.size();
    const unsigned inner = std::max(1u, cfg_.workers / static_cast<unsigned>(std::max<std::size_t>(1, n)));
    graphs_.assign(n, {});
    nodes_.assign(n, {});
    parallel_for(n, cfg_.workers, [&](std::size_t w) {
      auto prevalence = texts_[w].prevalence();
      graphs_[w] = build_graph(texts_[w].records(), prevalence, cfg_.min_edge_weight);
      const auto& g = graphs_[w];
      auto& s = nodes_[w];
      s.prevalence.resize(g.node_count());
      for (std::size_t i = 0; i < g.node_count(); ++i) {
        s.prevalence[i] = static_cast<double>(prevalence.at(g.label(i)));
      }
      s.diversity = diversity_all(g, inner);
      s.connectivity = connectivity(g, {cfg_.edge_length, inner, 1e-12});
    });
    std::uint64_t nodes = 0, edges = 0, empty = 0;
    for (const auto& g : graphs_) {
      nodes += g.node_count();
      edges += g.edge_count();
      empty += g.node_count() == 0;
    }
    m_.counts["graph_nodes"] = nodes;
    m_.counts["graph_edges"] = edges;
    m_.counts["empty_windows"] = empty;
  }

  void score() {
    const std::size_t n = corpus_.windows.size();
    scores_.assign(n, {});
    for (std::size_t w = 0; w < n; ++w) {
      auto& s = nodes_[w];
      s.prevalence_moments = moments(s.prevalence);
      s.diversity_moments = moments(s.diversity);
      s.connectivity_moments = moments(s.connectivity);
      s.z_prevalence = standardize(s.prevalence);
      s.z_diversity = standardize(s.diversity);
      s.z_connectivity = standardize(s.connectivity);
      s.sbs.resize(s.prevalence.size());
      for (std::size_t i = 0; i < s.sbs.size(); ++i) {
        s.sbs[i] = compose_sbs(s.z_prevalence[i], s.z_diversity[i], s.z_connectivity[i]);
      }
      scores_[w] = keyword_scores(graphs_[w], s, keywords_, corpus_.windows[w].index);
    }

    auto f = open("scores.csv");
    csv::write_row(f, kScoreHeader);
    for (std::size_t w = 0; w < n; ++w) {
      for (const auto& s : scores_[w]) {
        csv::write_row(f, {std::to_string(s.window), week_start_[w], s.keyword, std::to_string(s.prevalence_raw),
                           csv::format_exact(s.diversity_raw), csv::format_exact(s.connectivity_raw),
                           csv::format_exact(s.z_prevalence), csv::format_exact(s.z_diversity),
                           csv::format_exact(s.z_connectivity), csv::format_exact(s.sbs)});
      }
    }
    if (cfg_.export_edges) {
      for (std::size_t w = 0; w < n; ++w) {
        std::string index = std::to_string(w);
        auto e = open("edges/window_" + std::string(index.size() < 4 ? 4 - index.size() : 0, '0') + index + ".csv");
        csv::write_row(e, {"source", "target", "weight"});
        const auto& g = graphs_[w];
        for (const auto& edge : g.edges()) {
          csv::write_row(e, {g.label(edge.i), g.label(edge.j), std::to_string(edge.weight)});
        }
      }
    }
    keyword_series_.clear();
    for (std::size_t k = 0; k < keywords_.size(); ++k) {
      WeeklySeries s{keywords_[k], 0, {}};
      for (std::size_t w = 0; w < n; ++w) s.values.push_back(scores_[w][k].sbs);
      keyword_series_.push_back(std::move(s));
    }
  }

  void targets() {
    targets_.clear();
    std::uint64_t count = 0;
    for (const auto& group : cfg_.targets) {
      auto monthly = load_monthly(group.path);
      check_unique_files(group, monthly);
      TargetGroupData data{group.name, {}};
      data.series.resize(monthly.size());
      parallel_for(monthly.size(), cfg_.workers, [&](std::size_t i) {
        data.series[i] = disaggregate(monthly[i], corpus_.windows, cfg_.spline_boundary);
      });
      for (const auto& s : data.series) {
        auto f = open("weekly/" + group.name + "/" + sanitize_name(s.name) + ".csv");
        csv::write_row(f, {"window_index", "week_start", "value"});
        for (std::size_t k = 0; k < s.values.size(); ++k) {
          csv::write_row(f, {std::to_string(s.first_window + k), week_start_[s.first_window + k],
                             csv::format_exact(s.values[k])});
        }
      }
      count += data.series.size();
      targets_.push_back(std::move(data));
    }
    m_.counts["target_series"] = count;
  }

  static void check_unique_files(const TargetGroup& group, const std::vector<MonthlySeries>& monthly) {
    std::set<std::string> names;
    for (const auto& s : monthly) {
      if (!names.insert(sanitize_name(s.name)).second) {
        throw InputError("series names in " + group.path + " collide after making them file-safe: '" + s.name + "'");
      }
    }
  }

  void load_previous() {
    load_text_resources();
    m_.counts["keywords"] = keywords_.size();
    // scores.csv
    const auto scores_path = (out_ / "scores.csv").string();
    auto rows = csv::read_file(scores_path);
    if (rows.empty() || rows[0].fields != kScoreHeader) {
      throw InputError(scores_path + ": missing or unexpected header; run 'score' first");
    }
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> by_keyword;
    std::map<std::size_t, std::string> week_start;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& f = rows[r].fields;
      if (f.size() != kScoreHeader.size()) {
        throw InputError(scores_path + ":" + std::to_string(rows[r].line) + ": wrong field count");
      }
      auto w = csv::parse_double(f[0]);
      auto v = csv::parse_double(f[9]);
      if (!w || !v || *w < 0) throw InputError(scores_path + ":" + std::to_string(rows[r].line) + ": bad number");
      auto window = static_cast<std::size_t>(*w);
      by_keyword[f[2]].emplace_back(window, *v);
      week_start[window] = f[1];
    }
    for (std::size_t w = 0; w < week_start.size(); ++w) {
      if (!week_start.contains(w)) throw InputError(scores_path + ": windows are not consecutive from 0");
      week_start_.push_back(week_start[w]);
    }
    keyword_series_.clear();
    for (const auto& k : keywords_) {
      auto it = by_keyword.find(k);
      if (it == by_keyword.end()) throw InputError(scores_path + ": no scores for keyword '" + k + "'");
      WeeklySeries s{k, 0, std::vector<double>(week_start_.size())};
      std::vector<char> seen(week_start_.size(), 0);
      for (auto [w, v] : it->second) {
        s.values[w] = v;
        seen[w] = 1;
      }
      if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw InputError(scores_path + ": keyword '" + k + "' is missing windows");
      }
      keyword_series_.push_back(std::move(s));
    }
    m_.counts["windows"] = week_start_.size();

    // weekly/<group>/<series>.csv
    targets_.clear();
    std::uint64_t count = 0;
    for (const auto& group : cfg_.targets) {
      auto monthly = load_monthly(group.path);
      check_unique_files(group, monthly);
      TargetGroupData data{group.name, {}};
      for (const auto& m : monthly) {
        const auto path = (out_ / "weekly" / group.name / (sanitize_name(m.name) + ".csv")).string();
        auto weekly = csv::read_file(path);
        if (weekly.empty() || weekly[0].fields != std::vector<std::string>{"window_index", "week_start", "value"}) {
          throw InputError(path + ": missing or unexpected header; run 'score' first");
        }
        WeeklySeries s{m.name, 0, {}};
        for (std::size_t r = 1; r < weekly.size(); ++r) {
          const auto& f = weekly[r].fields;
          auto w = f.size() == 3 ? csv::parse_double(f[0]) : std::nullopt;
          auto v = f.size() == 3 ? csv::parse_double(f[2]) : std::nullopt;
          if (!w || !v) throw InputError(path + ":" + std::to_string(weekly[r].line) + ": malformed row");
          if (r == 1) s.first_window = static_cast<std::size_t>(*w);
          if (static_cast<std::size_t>(*w) != s.first_window + s.values.size()) {
            throw InputError(path + ":" + std::to_string(weekly[r].line) + ": windows are not consecutive");
          }
          s.values.push_back(*v);
        }
        data.series.push_back(std::move(s));
      }
      count += data.series.size();
      targets_.push_back(std::move(data));
    }
    m_.counts["target_series"] = count;
  }

  void causality() {
    BatteryOptions opt;
    opt.p_max = cfg_.p_max;
    opt.thresholds = cfg_.thresholds;
    opt.reverse = cfg_.reverse_direction;
    opt.difference = cfg_.difference;
    opt.workers = cfg_.workers;

    std::uint64_t pairs = 0, failed = 0, significant = 0;
    for (const auto& group : targets_) {
      auto results = run_battery(keyword_series_, group.series, opt);
      write_tables(group, results);
      for (const auto& r : results) {
        ++pairs;
        failed += r.status != PairStatus::Ok;
        significant += !r.stars.empty();
      }
    }
    write_plot_data();
    m_.counts["pairs"] = pairs;
    m_.counts["pairs_failed"] = failed;
    m_.counts["pairs_significant"] = significant;
    m_.notes.emplace_back(kSmoothnessNote);
    m_.notes.emplace_back(cfg_.difference ? "series were first-differenced before testing"
                                          : "tests run on levels; set \"difference\": true to difference first");
  }

  void write_tables(const TargetGroupData& group, const std::vector<GrangerResult>& results) {
    auto write_long = [&](const std::string& rel, bool reverse) {
      auto f = open(rel);
      csv::write_row(f, {"keyword", "target", "lags", "f_stat", "p_value", "stars", "cc_sign", "status"});
      for (const auto& r : results) {
        if (r.reverse != reverse) continue;
        const bool ok = r.status == PairStatus::Ok;
        csv::write_row(f, {r.keyword, r.target, ok ? std::to_string(r.lags) : std::string(),
                           ok ? csv::format_sig(r.f_stat) : "NA", ok ? csv::format_sig(r.p_value) : "NA", r.stars,
                           ok ? std::string(1, r.cc_sign) : std::string(), std::string(status_name(r.status))});
      }
    };
    write_long("table_" + group.group + ".csv", false);
    if (cfg_.reverse_direction) write_long("table_" + group.group + "_reverse.csv", true);

    auto f = open("table_" + group.group + "_wide.csv");
    std::vector<std::string> header{"keyword"};
    for (const auto& s : group.series) header.push_back(s.name);
    csv::write_row(f, header);
    const std::size_t targets = group.series.size();
    for (std::size_t k = 0; k < keyword_series_.size(); ++k) {
      std::vector<std::string> row{keyword_series_[k].name};
      for (std::size_t t = 0; t < targets; ++t) {
        const auto& r = results[k * targets + t];
        row.push_back(r.status == PairStatus::Ok ? csv::format_sig(r.f_stat) + r.stars : "NA");
      }
      csv::write_row(f, row);
    }
  }

  void write_plot_data() {
    auto f = open("plot_data.csv");
    std::vector<std::string> header{"window_index", "week_start"};
    for (const auto& k : keyword_series_) header.push_back("sbs:" + k.name);
    for (const auto& g : targets_) {
      for (const auto& s : g.series) header.push_back(g.group + ":" + s.name);
    }
    csv::write_row(f, header);
    for (std::size_t w = 0; w < week_start_.size(); ++w) {
      std::vector<std::string> row{std::to_string(w), week_start_[w]};
      for (const auto& k : keyword_series_) row.push_back(cell(k, w));
      for (const auto& g : targets_) {
        for (const auto& s : g.series) row.push_back(cell(s, w));
      }
      csv::write_row(f, row);
    }
  }

  static std::string cell(const WeeklySeries& s, std::size_t w) {
    if (w < s.first_window || w >= s.first_window + s.size()) return "";
    return csv::format_exact(s.values[w - s.first_window]);
  }

  const RunConfig& cfg_;
  RunManifest& m_;
  fs::path out_;
  std::string current_;
  std::vector<std::string> written_;

  std::vector<KeywordSet> sets_;
  std::vector<std::string> keywords_;
  StopWords stopwords_;
  std::unique_ptr<Stemmer> stemmer_;
  CanonicalMap canon_;

  std::vector<Document> documents_;
  WindowedCorpus corpus_;
  std::vector<std::string> week_start_;
  std::vector<WindowText> texts_;
  std::vector<WordGraph> graphs_;
  std::vector<NodeScores> nodes_;
  std::vector<std::vector<SbsScore>> scores_;
  std::vector<WeeklySeries> keyword_series_;
  std::vector<TargetGroupData> targets_;
};

}  // namespace

RunManifest run_pipeline(const RunConfig& cfg, Command command) {
  RunManifest m;
  m.command = std::string(command_name(command));
  m.config_path = cfg.config_path;
  m.workers = cfg.workers;
  std::error_code ec;
  if (!cfg.config_path.empty() && fs::is_regular_file(cfg.config_path, ec)) m.config_sha256 = sha256_file(cfg.config_path);

  Pipeline p(cfg, m);
  try {
    p.run(command);
    m.ok = true;
  } catch (const std::exception& e) {
    m.ok = false;
    m.failed_stage = p.current_stage().empty() ? "setup" : p.current_stage();
    m.error = e.what();
  }
  try {
    p.finish_files();
  } catch (const std::exception& e) {
    if (m.ok) {
      m.ok = false;
      m.failed_stage = "write";
      m.error = e.what();
    }
  }
  fs::create_directories(cfg.output_dir, ec);
  std::ofstream f(fs::path(cfg.output_dir) / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write manifest to " + cfg.output_dir);
  f << m.to_json();
  return m;
}

}  // namespace sbsflow
