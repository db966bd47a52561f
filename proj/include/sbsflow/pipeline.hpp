#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbsflow/config.hpp"
#include "sbsflow/network.hpp"

namespace sbsflow {

enum class Command { Run, Score, Test };

std::string_view command_name(Command c) noexcept;

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string command;
  bool ok = false;
  std::string failed_stage;
  std::string error;
  std::string config_path;
  std::string config_sha256;
  unsigned workers = 1;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<OutputFile> files;
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Runs the requested stages and writes their outputs plus manifest.json to
/// cfg.output_dir. Stage failures are recorded in the manifest rather than
/// thrown; only a failure to write the manifest itself escapes.
///
///   run    ingest, windows, text, graph, sbs, targets, causality
///   score  ingest, windows, text, graph, sbs, targets
///   test   causality, reading scores.csv and weekly/ from a previous run
RunManifest run_pipeline(const RunConfig& cfg, Command command = Command::Run);

/// File-name-safe form of a series name.
std::string sanitize_name(const std::string& name);

}  // namespace sbsflow
