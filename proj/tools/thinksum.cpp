// Command-line harness: evaluate a task file with a pipeline against a mock
// or remote backend. Exit codes: 0 completed run, 2 configuration error,
// 3 unrecoverable backend failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "thinksum/thinksum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBackend = 3;

struct RunArgs {
  std::string task_path;
  std::string pipeline;
  std::string backend = "mock";
  std::string mock_table;
  std::string endpoint;
  std::string model = "davinci";
  double temperature = 0.0;
  int max_tokens = 100;
  std::string cache_path;
  int parallelism = 8;
  std::uint64_t seed = 0;
  std::string report_path;
  std::string format = "table";
  std::string prompts_dir = "prompts";
};

int run_command(const RunArgs& args, const CLI::App& cmd) {
  using namespace thinksum;

  tasks::TaskFile task = tasks::load_task_file(args.task_path);

  std::string pipeline_name = args.pipeline.empty() ? task.pipeline : args.pipeline;
  if (pipeline_name.empty()) {
    throw std::invalid_argument("no pipeline given and the task file names none");
  }
  const tasks::PipelineKind kind = tasks::pipeline_kind_from_name(pipeline_name);

  tasks::TaskConfig config;
  if (task.metadata.contains("config")) {
    tasks::apply_config_overrides(task.metadata["config"], config);
  }
  // Explicit flags win over task-file overrides.
  if (cmd.count("--temperature")) config.temperature = args.temperature;
  if (cmd.count("--max-tokens")) config.max_tokens = args.max_tokens;
  if (cmd.count("--parallelism")) config.parallelism = args.parallelism;
  if (cmd.count("--seed")) config.seed = args.seed;

  std::unique_ptr<LmBackend> base;
  if (args.backend == "mock") {
    auto mock = std::make_unique<MockBackend>();
    if (!args.mock_table.empty()) {
      mock->load_file(args.mock_table);
    }
    base = std::move(mock);
  } else if (args.backend == "remote") {
    if (args.endpoint.empty()) {
      throw std::invalid_argument("remote backend needs --endpoint");
    }
    RemoteBackendOptions options;
    options.endpoint = args.endpoint;
    options.model = args.model;
    options.max_in_flight = static_cast<std::size_t>(std::max(1, config.parallelism));
    if (const char* key = std::getenv("THINKSUM_API_KEY")) options.api_key = key;
    base = std::make_unique<RemoteBackend>(options);
  } else {
    throw std::invalid_argument("unknown backend '" + args.backend + "'");
  }

  std::unique_ptr<CachedBackend> cached;
  LmBackend* backend = base.get();
  if (!args.cache_path.empty()) {
    cached = std::make_unique<CachedBackend>(*base, args.cache_path);
    backend = cached.get();
  }

  think::PromptLibrary prompts(args.prompts_dir);
  tasks::RunReport report = tasks::run_evaluation(*backend, task, kind, config, prompts);

  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) throw std::invalid_argument("cannot write report to " + args.report_path);
    if (args.format == "json-lines") {
      tasks::write_report_json_lines(report, out);
    } else {
      tasks::write_report_table(report, out);
    }
    std::cout << report.task_name << " [" << report.pipeline << "] " << report.examples
              << " examples, accuracy " << report.accuracy << ", report in "
              << args.report_path << "\n";
  } else if (args.format == "json-lines") {
    tasks::write_report_json_lines(report, std::cout);
  } else {
    tasks::write_report_table(report, std::cout);
  }

  // A run where every example died on the wire is not a completed run.
  if (report.errors == report.examples) {
    for (const auto& record : report.records) {
      if (record.error.rfind("backend unreachable", 0) == 0 ||
          record.error.rfind("malformed response", 0) == 0) {
        std::cerr << "error: " << record.error << "\n";
        return kExitBackend;
      }
    }
    std::cerr << "error: all examples failed: " << report.records.front().error << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinksum: two-stage Think/Sum inference over language-model likelihoods"};
  app.require_subcommand(1);

  RunArgs args;
  CLI::App* run = app.add_subcommand("run", "evaluate a task file with a pipeline");
  run->add_option("--task", args.task_path, "task JSON file")->required();
  run->add_option("--pipeline", args.pipeline, "pipeline kind (see `list`)");
  run->add_option("--backend", args.backend, "mock | remote")
      ->check(CLI::IsMember({"mock", "remote"}));
  run->add_option("--mock-table", args.mock_table, "scripted scores/generations (mock backend)");
  run->add_option("--endpoint", args.endpoint, "completion endpoint URL (remote backend)");
  run->add_option("--model", args.model, "model name sent to the endpoint");
  run->add_option("--temperature", args.temperature, "sampling temperature");
  run->add_option("--max-tokens", args.max_tokens, "generation token budget");
  run->add_option("--cache", args.cache_path, "JSONL score/generation cache");
  run->add_option("--parallelism", args.parallelism, "max in-flight queries and examples");
  run->add_option("--seed", args.seed, "seed for EM restarts and sampling");
  run->add_option("--report", args.report_path, "report destination (default: stdout)");
  run->add_option("--format", args.format, "table | json-lines")
      ->check(CLI::IsMember({"table", "json-lines"}));
  run->add_option("--prompts-dir", args.prompts_dir, "directory with prompt data files");

  CLI::App* list = app.add_subcommand("list", "list pipeline kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (list->parsed()) {
    using thinksum::tasks::PipelineKind;
    for (int k = 0; k <= static_cast<int>(PipelineKind::kChainOfThought); ++k) {
      std::cout << thinksum::tasks::pipeline_kind_name(static_cast<PipelineKind>(k)) << "\n";
    }
    return kExitOk;
  }

  try {
    return run_command(args, *run);
  } catch (const thinksum::BackendUnreachable& e) {
    std::cerr << "error: backend unreachable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const thinksum::MalformedResponse& e) {
    std::cerr << "error: malformed response: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
