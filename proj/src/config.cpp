#include "sbsflow/config.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "sbsflow/error.hpp"

namespace sbsflow {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Checker {
 public:
  Checker(const json& root, std::string base_dir) : root_(root), base_(std::move(base_dir)) {}

  std::vector<std::string> problems;

  void problem(const std::string& field, const std::string& msg) { problems.push_back(field + ": " + msg); }

  void unknown_keys(const json& obj, const std::string& prefix, const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
      if (!known.contains(key)) problem(prefix + key, "unknown setting");
    }
  }

  template <typename T>
  T get(const json& obj, const std::string& prefix, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
      return obj.at(key).get<T>();
    } catch (const json::exception&) {
      problem(prefix + key, "has the wrong type");
      return fallback;
    }
  }

  std::optional<std::string> required_string(const json& obj, const std::string& prefix, const std::string& key) {
    if (!obj.contains(key)) {
      problem(prefix + key, "is required");
      return std::nullopt;
    }
    if (!obj.at(key).is_string()) {
      problem(prefix + key, "must be a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  std::string resolve(const std::string& p) const {
    fs::path path(p);
    if (path.is_relative()) path = fs::path(base_) / path;
    return path.lexically_normal().string();
  }

  std::string existing_file(const json& obj, const std::string& prefix, const std::string& key) {
    auto value = required_string(obj, prefix, key);
    if (!value) return {};
    std::string path = resolve(*value);
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) problem(prefix + key, "file not found: " + path);
    return path;
  }

  template <typename T>
  T positive(const json& obj, const std::string& key, T fallback, T minimum) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
      problem(key, "must be an integer >= " + std::to_string(minimum));
      return fallback;
    }
    return static_cast<T>(v.get<long long>());
  }

  std::optional<Date> date(const json& obj, const std::string& key) {
    auto text = required_string(obj, "", key);
    if (!text) return std::nullopt;
    auto d = parse_date(*text);
    if (!d) problem(key, "invalid date '" + *text + "' (expected YYYY-MM-DD)");
    return d;
  }

 private:
  const json& root_;
  std::string base_;
};

bool safe_name(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (!(std::isalnum(c) || c == '_' || c == '-')) return false;
  }
  return true;
}

}  // namespace

RunConfig validate_config_text(const std::string& text, const std::string& base_dir, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError({origin + ": not valid JSON: " + e.what()});
  }
  if (!root.is_object()) throw ValidationError({origin + ": top level must be a JSON object"});

  Checker c(root, base_dir);
  RunConfig cfg;
  cfg.config_path = origin;
  c.unknown_keys(root, "",
                 {"corpus", "registry", "stopwords", "language", "window_size", "min_edge_weight",
                  "min_token_length", "split_sentences", "edge_length", "start", "end", "targets",
                  "spline_boundary", "p_max", "thresholds", "reverse_direction", "difference", "export_edges",
                  "output_dir", "workers"});

  if (!root.contains("corpus") || !root["corpus"].is_object()) {
    c.problem("corpus", "is required and must be an object");
  } else {
    const json& corpus = root["corpus"];
    c.unknown_keys(corpus, "corpus.", {"path", "format", "fields", "date_format", "include_title"});
    cfg.corpus_path = c.existing_file(corpus, "corpus.", "path");
    std::string format = c.get<std::string>(corpus, "corpus.", "format", "");
    if (format.empty()) format = fs::path(cfg.corpus_path).extension() == ".csv" ? "csv" : "jsonl";
    if (format == "jsonl") {
      cfg.ingest.format = CorpusFormat::JsonLines;
    } else if (format == "csv") {
      cfg.ingest.format = CorpusFormat::Csv;
    } else {
      c.problem("corpus.format", "must be 'jsonl' or 'csv'");
    }
    cfg.ingest.date_format = c.get<std::string>(corpus, "corpus.", "date_format", cfg.ingest.date_format);
    cfg.include_title = c.get<bool>(corpus, "corpus.", "include_title", true);
    if (corpus.contains("fields")) {
      const json& f = corpus["fields"];
      if (!f.is_object()) {
        c.problem("corpus.fields", "must be an object");
      } else {
        c.unknown_keys(f, "corpus.fields.", {"id", "date", "title", "body", "source"});
        cfg.ingest.id_field = c.get<std::string>(f, "corpus.fields.", "id", cfg.ingest.id_field);
        cfg.ingest.date_field = c.get<std::string>(f, "corpus.fields.", "date", cfg.ingest.date_field);
        cfg.ingest.title_field = c.get<std::string>(f, "corpus.fields.", "title", cfg.ingest.title_field);
        cfg.ingest.body_field = c.get<std::string>(f, "corpus.fields.", "body", cfg.ingest.body_field);
        cfg.ingest.source_field = c.get<std::string>(f, "corpus.fields.", "source", cfg.ingest.source_field);
      }
    }
  }

  cfg.registry_path = c.existing_file(root, "", "registry");
  cfg.stopwords_path = c.existing_file(root, "", "stopwords");

  std::string language = c.get<std::string>(root, "", "language", "italian");
  if (auto lang = parse_language(language)) {
    cfg.language = *lang;
  } else {
    c.problem("language", "unsupported language '" + language + "' (italian or english)");
  }

  cfg.window_size = c.positive<std::size_t>(root, "window_size", 3, 2);
  cfg.min_edge_weight = c.positive<std::uint64_t>(root, "min_edge_weight", 1, 1);
  cfg.min_token_length = c.positive<std::size_t>(root, "min_token_length", 2, 1);
  cfg.split_sentences = c.get<bool>(root, "", "split_sentences", true);
  std::string edge_length = c.get<std::string>(root, "", "edge_length", "inverse");
  if (edge_length == "inverse") {
    cfg.edge_length = EdgeLength::Inverse;
  } else if (edge_length == "raw") {
    cfg.edge_length = EdgeLength::Raw;
  } else {
    c.problem("edge_length", "must be 'inverse' or 'raw'");
  }

  auto start = c.date(root, "start");
  auto end = c.date(root, "end");
  if (start) cfg.start = *start;
  if (end) cfg.end = *end;
  if (start && end && *start >= *end) c.problem("start", "must be earlier than end");

  if (!root.contains("targets") || !root["targets"].is_array() || root["targets"].empty()) {
    c.problem("targets", "is required and must be a non-empty array of {\"group\", \"path\"}");
  } else {
    std::set<std::string> groups;
    for (std::size_t i = 0; i < root["targets"].size(); ++i) {
      const json& t = root["targets"][i];
      const std::string prefix = "targets[" + std::to_string(i) + "].";
      if (!t.is_object()) {
        c.problem("targets[" + std::to_string(i) + "]", "must be an object");
        continue;
      }
      c.unknown_keys(t, prefix, {"group", "path"});
      TargetGroup g;
      if (auto name = c.required_string(t, prefix, "group")) {
        g.name = *name;
        if (!safe_name(g.name)) c.problem(prefix + "group", "must use only letters, digits, '_' and '-'");
        if (!groups.insert(g.name).second) c.problem(prefix + "group", "duplicate group '" + g.name + "'");
      }
      g.path = c.existing_file(t, prefix, "path");
      cfg.targets.push_back(std::move(g));
    }
  }

  std::string boundary = c.get<std::string>(root, "", "spline_boundary", "natural");
  if (boundary == "natural") {
    cfg.spline_boundary = SplineBoundary::Natural;
  } else if (boundary == "not-a-knot") {
    cfg.spline_boundary = SplineBoundary::NotAKnot;
  } else {
    c.problem("spline_boundary", "must be 'natural' or 'not-a-knot'");
  }

  cfg.p_max = c.positive<std::size_t>(root, "p_max", 8, 1);
  if (root.contains("thresholds")) {
    const json& t = root["thresholds"];
    bool ok = t.is_array() && t.size() == 3 && t[0].is_number() && t[1].is_number() && t[2].is_number();
    if (!ok) {
      c.problem("thresholds", "must be an array of three numbers, e.g. [0.10, 0.05, 0.01]");
    } else {
      double a = t[0].get<double>(), b = t[1].get<double>(), d = t[2].get<double>();
      if (!(a > b && b > d)) {
        c.problem("thresholds", "must be strictly decreasing (one star, two stars, three stars)");
      } else if (!(d > 0 && a < 1)) {
        c.problem("thresholds", "must lie strictly between 0 and 1");
      } else {
        cfg.thresholds = {a, b, d};
      }
    }
  }
  cfg.reverse_direction = c.get<bool>(root, "", "reverse_direction", false);
  cfg.difference = c.get<bool>(root, "", "difference", false);
  cfg.export_edges = c.get<bool>(root, "", "export_edges", false);
  cfg.output_dir = c.resolve(c.get<std::string>(root, "", "output_dir", "out"));
  cfg.workers = c.positive<unsigned>(root, "workers", 1, 1);

  if (!c.problems.empty()) throw ValidationError(std::move(c.problems));
  return cfg;
}

RunConfig validate_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError({path + ": cannot read config file"});
  std::ostringstream text;
  text << in.rdbuf();
  auto base = fs::path(path).parent_path().string();
  auto cfg = validate_config_text(text.str(), base.empty() ? "." : base, path);
  cfg.config_path = path;
  return cfg;
}

}  // namespace sbsflow
