#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sbsflow/calendar.hpp"
#include "sbsflow/causality.hpp"
#include "sbsflow/corpus.hpp"
#include "sbsflow/network.hpp"
#include "sbsflow/series.hpp"
#include "sbsflow/stemmer.hpp"

namespace sbsflow {

/// A monthly target file whose series form one output table.
struct TargetGroup {
  std::string name;
  std::string path;
};

struct RunConfig {
  std::string config_path;  // as given
  std::string corpus_path;
  IngestConfig ingest;
  bool include_title = true;
  std::string registry_path;
  std::string stopwords_path;
  Language language = Language::Italian;
  std::size_t window_size = 3;
  std::uint64_t min_edge_weight = 1;
  std::size_t min_token_length = 2;
  bool split_sentences = true;
  EdgeLength edge_length = EdgeLength::Inverse;
  Date start{};
  Date end{};
  std::vector<TargetGroup> targets;
  SplineBoundary spline_boundary = SplineBoundary::Natural;
  std::size_t p_max = 8;
  StarThresholds thresholds;
  bool reverse_direction = false;
  bool difference = false;
  bool export_edges = false;
  std::string output_dir;
  unsigned workers = 1;
};

/// Reads and checks a JSON run configuration. Relative paths are resolved
/// against the directory of the config file. Every problem found is
/// collected; a non-empty list is thrown as ValidationError.
RunConfig validate_config(const std::string& path);

/// Same checks on an in-memory document; `base_dir` resolves relative paths.
RunConfig validate_config_text(const std::string& text, const std::string& base_dir,
                               const std::string& origin = "<config>");

}  // namespace sbsflow
