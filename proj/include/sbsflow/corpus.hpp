#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sbsflow/calendar.hpp"

namespace sbsflow {

/// One dated news item.
struct Document {
  std::string id;
  Date published_at{};
  std::string title;
  std::string body;
  std::string source;

  /// Text handed to the text pipeline. The title is kept as its own sentence.
  std::string analysis_text(bool include_title) const;
};

enum class CorpusFormat { JsonLines, Csv };

/// Field mapping and parsing rules for a corpus file.
struct IngestConfig {
  CorpusFormat format = CorpusFormat::JsonLines;
  std::string id_field = "id";
  std::string date_field = "date";
  std::string title_field = "title";
  std::string body_field = "body";
  std::string source_field = "source";
  std::string date_format = "%Y-%m-%d";
};

struct RejectedRecord {
  std::size_t line = 0;
  std::string reason;
};

struct LoadResult {
  std::vector<Document> documents;
  std::vector<RejectedRecord> rejects;
  std::size_t records = 0;  // documents.size() + rejects.size()
};

/// Streams documents to `sink` in file order. Records without a valid id or
/// date, unparseable lines and duplicate ids are rejected with their line
/// number. Throws InputError when the file cannot be read.
void for_each_document(const std::string& path, const IngestConfig& config,
                       const std::function<void(Document&&)>& sink,
                       std::vector<RejectedRecord>& rejects, std::size_t& records);

LoadResult load_corpus(const std::string& path, const IngestConfig& config);

/// Seven-day analysis window [start_date, end_date).
struct TimeWindow {
  std::size_t index = 0;
  Date start_date{};
  Date end_date{};

  bool contains(Date d) const noexcept { return start_date <= d && d < end_date; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Consecutive 7-day windows anchored at `start`; the last window is the one
/// containing `end - 1 day`. Throws ValidationError if start >= end.
std::vector<TimeWindow> make_windows(Date start, Date end);

struct WindowedCorpus {
  std::vector<TimeWindow> windows;
  std::vector<std::vector<Document>> documents;  // parallel to `windows`
  std::size_t excluded = 0;                      // outside [start, end)

  std::size_t assigned() const noexcept;

  /// Appends the documents of a shard computed over the same window grid.
  /// Merging shards in file order reproduces the unsharded result.
  void merge(WindowedCorpus&& shard);
};

WindowedCorpus assign_windows(std::vector<Document> docs, Date start, Date end);

}  // namespace sbsflow
