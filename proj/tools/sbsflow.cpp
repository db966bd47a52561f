// sbsflow command-line front end.
//
//   sbsflow validate --config run.json
//   sbsflow run      --config run.json [--workers N] [--out DIR]
//   sbsflow score    --config run.json [--workers N] [--out DIR]
//   sbsflow test     --config run.json [--workers N] [--out DIR]
//
// Exit codes: 0 success, 1 validation failure, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "sbsflow/config.hpp"
#include "sbsflow/error.hpp"
#include "sbsflow/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

struct Args {
  std::string config;
  unsigned workers = 0;
  std::string out;
};

void add_common(CLI::App* sub, Args& args, bool run_options) {
  sub->add_option("--config", args.config, "JSON run configuration")->required();
  if (run_options) {
    sub->add_option("--workers", args.workers, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_option("--out", args.out, "output directory (overrides the config)");
  }
}

void print_problems(const sbsflow::ValidationError& e) {
  std::cerr << "configuration is invalid:\n";
  for (const auto& p : e.problems()) std::cerr << "  - " << p << "\n";
}

int execute(const Args& args, sbsflow::Command command) {
  sbsflow::RunConfig cfg;
  try {
    cfg = sbsflow::validate_config(args.config);
  } catch (const sbsflow::ValidationError& e) {
    print_problems(e);
    return kValidation;
  }
  if (args.workers) cfg.workers = args.workers;
  if (!args.out.empty()) cfg.output_dir = std::filesystem::absolute(args.out).lexically_normal().string();

  sbsflow::RunManifest m;
  try {
    m = sbsflow::run_pipeline(cfg, command);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  if (!m.ok) {
    std::cerr << "error in stage '" << m.failed_stage << "': " << m.error << "\n";
    std::cerr << "manifest: " << (std::filesystem::path(cfg.output_dir) / "manifest.json").string() << "\n";
    return kRuntime;
  }
  for (const auto& [k, v] : m.counts) std::cout << k << ": " << v << "\n";
  for (const auto& n : m.notes) std::cout << "note: " << n << "\n";
  std::cout << "wrote " << m.files.size() << " files and manifest.json to " << cfg.output_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weekly Semantic Brand Score series and Granger causality against monthly targets"};
  app.require_subcommand(1);

  Args validate_args, run_args, score_args, test_args;
  auto* validate = app.add_subcommand("validate", "check a configuration and report every problem");
  add_common(validate, validate_args, false);
  auto* run = app.add_subcommand("run", "full pipeline: scores, weekly targets and causality tables");
  add_common(run, run_args, true);
  auto* score = app.add_subcommand("score", "stop after scores and weekly targets");
  add_common(score, score_args, true);
  auto* test = app.add_subcommand("test", "causality only, from the outputs of a previous score or run");
  add_common(test, test_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (validate->parsed()) {
    try {
      auto cfg = sbsflow::validate_config(validate_args.config);
      std::cout << "ok: " << cfg.config_path << " (window_size " << cfg.window_size << ", " << cfg.targets.size()
                << " target group(s), output " << cfg.output_dir << ")\n";
      return kOk;
    } catch (const sbsflow::ValidationError& e) {
      print_problems(e);
      return kValidation;
    }
  }
  if (run->parsed()) return execute(run_args, sbsflow::Command::Run);
  if (score->parsed()) return execute(score_args, sbsflow::Command::Score);
  return execute(test_args, sbsflow::Command::Test);
}
