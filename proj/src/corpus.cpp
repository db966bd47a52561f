#include "sbsflow/corpus.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "sbsflow/csv.hpp"
#include "sbsflow/error.hpp"

namespace sbsflow {
namespace {

using nlohmann::json;

std::string scalar_to_string(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
  return {};
}

class RecordBuilder {
 public:
  RecordBuilder(const IngestConfig& config, const std::function<void(Document&&)>& sink,
                std::vector<RejectedRecord>& rejects)
      : config_(config), sink_(sink), rejects_(rejects) {}

  void accept(std::size_t line, std::string id, const std::string& date_text, std::string title,
              std::string body, std::string source) {
    if (id.empty()) return reject(line, "missing id");
    if (date_text.empty()) return reject(line, "missing date");
    auto date = parse_date(date_text, config_.date_format);
    if (!date) return reject(line, "invalid date '" + date_text + "'");
    if (!seen_.insert(id).second) return reject(line, "duplicate id '" + id + "'");
    sink_(Document{std::move(id), *date, std::move(title), std::move(body), std::move(source)});
  }

  void reject(std::size_t line, std::string reason) { rejects_.push_back({line, std::move(reason)}); }

 private:
  const IngestConfig& config_;
  const std::function<void(Document&&)>& sink_;
  std::vector<RejectedRecord>& rejects_;
  std::unordered_set<std::string> seen_;
};

void read_jsonl(std::istream& in, const IngestConfig& config, RecordBuilder& builder, std::size_t& records) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      builder.reject(line_no, "not a JSON object");
      continue;
    }
    auto field = [&](const std::string& name) -> std::string {
      auto it = obj.find(name);
      return it == obj.end() ? std::string{} : scalar_to_string(*it);
    };
    builder.accept(line_no, field(config.id_field), field(config.date_field), field(config.title_field),
                   field(config.body_field), field(config.source_field));
  }
}

void read_csv(std::istream& in, const IngestConfig& config, const std::string& path, RecordBuilder& builder,
              std::size_t& records) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return;
  auto column = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header->fields.size(); ++i) {
      if (header->fields[i] == name) return static_cast<long>(i);
    }
    return -1;
  };
  long id_col = column(config.id_field), date_col = column(config.date_field);
  long title_col = column(config.title_field), body_col = column(config.body_field);
  long source_col = column(config.source_field);
  if (id_col < 0 || date_col < 0) {
    throw InputError("'" + path + "': header lacks the id or date column ('" + config.id_field + "', '" +
                     config.date_field + "')");
  }
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && row->fields[0].empty()) continue;
    ++records;
    auto get = [&](long col) { return col >= 0 && static_cast<std::size_t>(col) < row->fields.size() ? row->fields[col] : std::string{}; };
    if (row->fields.size() != header->fields.size()) {
      builder.reject(row->line, "expected " + std::to_string(header->fields.size()) + " fields, found " +
                                    std::to_string(row->fields.size()));
      continue;
    }
    builder.accept(row->line, get(id_col), get(date_col), get(title_col), get(body_col), get(source_col));
  }
}

}  // namespace

std::string Document::analysis_text(bool include_title) const {
  if (!include_title || title.empty()) return body;
  return title + ".\n" + body;
}

void for_each_document(const std::string& path, const IngestConfig& config,
                       const std::function<void(Document&&)>& sink, std::vector<RejectedRecord>& rejects,
                       std::size_t& records) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  RecordBuilder builder(config, sink, rejects);
  if (config.format == CorpusFormat::JsonLines) {
    read_jsonl(in, config, builder, records);
  } else {
    read_csv(in, config, path, builder, records);
  }
  if (in.bad()) throw InputError("read error on corpus file '" + path + "'");
}

LoadResult load_corpus(const std::string& path, const IngestConfig& config) {
  LoadResult result;
  for_each_document(
      path, config, [&](Document&& d) { result.documents.push_back(std::move(d)); }, result.rejects,
      result.records);
  return result;
}

std::vector<TimeWindow> make_windows(Date start, Date end) {
  if (start >= end) {
    throw ValidationError({"corpus start date " + format_date(start) + " must precede end date " + format_date(end)});
  }
  std::vector<TimeWindow> windows;
  for (Date s = start; s < end; s += std::chrono::days{7}) {
    windows.push_back({windows.size(), s, s + std::chrono::days{7}});
  }
  return windows;
}

std::size_t WindowedCorpus::assigned() const noexcept {
  std::size_t n = 0;
  for (const auto& docs : documents) n += docs.size();
  return n;
}

void WindowedCorpus::merge(WindowedCorpus&& shard) {
  if (shard.windows != windows) throw InputError("cannot merge window assignments over different grids");
  for (std::size_t w = 0; w < windows.size(); ++w) {
    auto& dst = documents[w];
    dst.insert(dst.end(), std::make_move_iterator(shard.documents[w].begin()),
               std::make_move_iterator(shard.documents[w].end()));
  }
  excluded += shard.excluded;
}

WindowedCorpus assign_windows(std::vector<Document> docs, Date start, Date end) {
  WindowedCorpus out;
  out.windows = make_windows(start, end);
  out.documents.resize(out.windows.size());
  for (auto& doc : docs) {
    if (doc.published_at < start || doc.published_at >= end) {
      ++out.excluded;
      continue;
    }
    auto offset = (doc.published_at - start).count() / 7;
    out.documents[static_cast<std::size_t>(offset)].push_back(std::move(doc));
  }
  return out;
}

}  // namespace sbsflow
