#pragma once

/**
 * Evaluation harness: runs a pipeline over every example of a task with
 * bounded parallelism, records per-example outcomes (including failures,
 * which never abort the run), and serializes reports as aligned tables or
 * JSON lines. Full query traces are kept per example so any answer can be
 * audited afterwards. Reports are deterministic for a deterministic
 * backend; the only timing-dependent field is the summary's wall_time_ms.
 */

#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "thinksum/metrics.hpp"
#include "thinksum/pipelines.hpp"
#include "thinksum/task.hpp"
#include "thinksum/task_file.hpp"

namespace thinksum::tasks {

enum class Metric { kAccuracy, kBleu, kExactSet };

inline const char* metric_name(Metric metric) {
  switch (metric) {
    case Metric::kAccuracy: return "accuracy";
    case Metric::kBleu: return "bleu";
    case Metric::kExactSet: return "exact-set";
  }
  return "?";
}

inline Metric metric_from_name(const std::string& name) {
  if (name == "accuracy") return Metric::kAccuracy;
  if (name == "bleu") return Metric::kBleu;
  if (name == "exact-set") return Metric::kExactSet;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

/// Codenames is scored with BLEU against its alphabetized reference list;
/// everything else defaults to accuracy.
inline Metric default_metric(PipelineKind kind) {
  return kind == PipelineKind::kCodenames ? Metric::kBleu : Metric::kAccuracy;
}

/// BLEU and exact-set only make sense for free-form string answers.
inline bool metric_valid(PipelineKind kind, Metric metric) {
  if (metric == Metric::kAccuracy) return true;
  return kind == PipelineKind::kCodenames || kind == PipelineKind::kTranslationQa;
}

struct ExampleRecord {
  size_t index = 0;
  std::string reference;
  std::string chosen;
  bool correct = false;  // exact match (set match for codenames)
  double metric = 0.0;   // the task metric's per-example value
  size_t backend_calls = 0;
  bool used_fallback = false;
  bool tie = false;
  std::vector<std::string> warnings;
  std::string error;  // non-empty when the pipeline threw
  std::vector<TraceEntry> trace;
};

struct RunReport {
  std::string task_name;
  std::string pipeline;
  std::string backend;
  Metric metric = Metric::kAccuracy;
  std::vector<ExampleRecord> records;
  size_t examples = 0;
  size_t correct = 0;
  size_t errors = 0;
  double accuracy = 0.0;
  double metric_mean = 0.0;
  size_t backend_calls = 0;
  bool trace_complete = false;
  double wall_time_ms = 0.0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

inline double per_example_metric(const std::string& chosen, const std::string& reference,
                                 Metric metric) {
  switch (metric) {
    case Metric::kAccuracy: return exact_match(chosen, reference) ? 1.0 : 0.0;
    case Metric::kExactSet: return exact_set_match(chosen, reference) ? 1.0 : 0.0;
    case Metric::kBleu: return bleu(chosen, reference);
  }
  throw std::invalid_argument("per_example_metric: bad metric");
}

/// Mean per-example metric over the records. The aggregate in a report is
/// exactly this, so it can be recomputed from the written rows.
inline double compute_metric(const std::vector<ExampleRecord>& records, Metric metric) {
  if (records.empty()) throw std::invalid_argument("compute_metric: no results");
  double sum = 0.0;
  for (const auto& record : records) {
    sum += per_example_metric(record.chosen, record.reference, metric);
  }
  return sum / static_cast<double>(records.size());
}

inline nlohmann::ordered_json config_to_json(const TaskConfig& config) {
  nlohmann::ordered_json j;
  j["temperature"] = config.temperature;
  j["diversity_temperature"] = config.diversity_temperature;
  j["max_tokens"] = config.max_tokens;
  j["fact_max_tokens"] = config.fact_max_tokens;
  j["n_examples"] = config.n_examples;
  j["n_alternatives"] = config.n_alternatives;
  j["n_differences"] = config.n_differences;
  j["n_translations"] = config.n_translations;
  j["sports_threshold"] = config.sports_threshold;
  j["known_unknown_margin"] = config.known_unknown_margin();
  j["seed"] = config.seed;
  j["em_iterations"] = config.em_iterations;
  j["em_classes"] = config.em_classes;
  j["p_true"] = config.p_true;
  j["p_false"] = config.p_false;
  j["permutations_only"] = config.deduction.permutations_only;
  j["reversal_marginalization"] = config.deduction.reversal_marginalization;
  j["deduction_backend_evaluator"] = config.deduction_backend_evaluator;
  j["emoji_translation"] = config.emoji_translation;
  j["length_normalize"] = config.length_normalize;
  j["parallelism"] = config.parallelism;
  return j;
}

namespace detail {

inline ExampleRecord score_example(const TaskInstance& instance, Metric metric,
                                   PipelineResult result, size_t index) {
  ExampleRecord record;
  record.index = index;
  record.reference = instance.reference();
  record.chosen = result.chosen;
  record.backend_calls = result.trace.size();
  record.used_fallback = result.used_fallback;
  record.tie = result.tie;
  record.warnings = std::move(result.warnings);
  record.trace = std::move(result.trace);
  record.correct = metric == Metric::kExactSet || metric == Metric::kBleu
                       ? exact_set_match(record.chosen, record.reference)
                       : exact_match(record.chosen, record.reference);
  record.metric = per_example_metric(record.chosen, record.reference, metric);
  return record;
}

}  // namespace detail

/// Run `kind` over every example. Pipeline exceptions become per-example
/// error records; the run itself only throws on setup problems.
inline RunReport run_evaluation(LmBackend& backend, const TaskFile& task, PipelineKind kind,
                                const TaskConfig& config, const think::PromptLibrary& prompts) {
  if (task.examples.empty()) throw std::invalid_argument("run_evaluation: no examples");
  RunReport report;
  report.task_name = task.name;
  report.pipeline = pipeline_kind_name(kind);
  report.backend = backend.name();
  report.metric = task.metadata.contains("metric")
                      ? metric_from_name(task.metadata["metric"].get<std::string>())
                      : default_metric(kind);
  if (!metric_valid(kind, report.metric)) {
    throw std::invalid_argument(std::string("metric '") + metric_name(report.metric) +
                                "' does not apply to pipeline '" + report.pipeline + "'");
  }
  report.config = config_to_json(config);
  report.records.resize(task.examples.size());

  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t calls_before = backend.calls();

  const size_t workers =
      std::min<size_t>(std::max(1, config.parallelism), task.examples.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= task.examples.size()) return;
      const TaskInstance& instance = task.examples[i];
      ExampleRecord failed;
      failed.index = i;
      failed.reference = instance.reference();
      try {
        PipelineContext context(backend, config, prompts);
        PipelineResult result = solve_instance(context, instance, kind);
        report.records[i] = detail::score_example(instance, report.metric, std::move(result), i);
        continue;
      } catch (const BackendUnreachable& e) {
        failed.error = std::string("backend unreachable: ") + e.what();
      } catch (const MalformedResponse& e) {
        failed.error = std::string("malformed response: ") + e.what();
      } catch (const std::exception& e) {
        failed.error = e.what();
      }
      report.records[i] = std::move(failed);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  const uint64_t calls_after = backend.calls();
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();

  size_t traced = 0;
  double metric_sum = 0.0;
  for (const auto& record : report.records) {
    traced += record.backend_calls;
    metric_sum += record.metric;
    if (record.correct) ++report.correct;
    if (!record.error.empty()) ++report.errors;
  }
  report.examples = report.records.size();
  report.accuracy = static_cast<double>(report.correct) / static_cast<double>(report.examples);
  report.metric_mean = metric_sum / static_cast<double>(report.examples);
  report.backend_calls = static_cast<size_t>(calls_after - calls_before);
  report.trace_complete = report.errors == 0 && traced == report.backend_calls;
  return report;
}

namespace detail {

inline nlohmann::ordered_json trace_to_json(const std::vector<TraceEntry>& trace) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& entry : trace) {
    nlohmann::ordered_json row;
    if (entry.kind == TraceEntry::Kind::kScore) {
      row["kind"] = "score";
      row["prompt"] = entry.prompt;
      row["continuation"] = entry.continuation;
      row["logprob"] = entry.logprob;
    } else {
      row["kind"] = "generate";
      row["prompt"] = entry.prompt;
      row["output"] = entry.output;
      row["temperature"] = entry.params.temperature;
      row["max_tokens"] = entry.params.max_tokens;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// JSON-lines report: one record per example (with its full query trace),
/// then one summary record.
inline void write_report_json_lines(const RunReport& report, std::ostream& out) {
  if (report.records.empty()) {
    throw std::invalid_argument("write_report_json_lines: refusing to write an empty report");
  }
  for (const auto& record : report.records) {
    nlohmann::ordered_json row;
    row["record"] = "example";
    row["index"] = record.index;
    row["reference"] = record.reference;
    row["chosen"] = record.chosen;
    row["correct"] = record.correct;
    row["metric"] = record.metric;
    row["backend_calls"] = record.backend_calls;
    row["used_fallback"] = record.used_fallback;
    row["tie"] = record.tie;
    row["warnings"] = record.warnings;
    row["error"] = record.error;
    row["trace"] = detail::trace_to_json(record.trace);
    out << row.dump() << "\n";
  }
  nlohmann::ordered_json summary;
  summary["record"] = "summary";
  summary["task"] = report.task_name;
  summary["pipeline"] = report.pipeline;
  summary["backend"] = report.backend;
  summary["metric"] = metric_name(report.metric);
  summary["examples"] = report.examples;
  summary["correct"] = report.correct;
  summary["errors"] = report.errors;
  summary["accuracy"] = report.accuracy;
  summary["metric_mean"] = report.metric_mean;
  summary["backend_calls"] = report.backend_calls;
  summary["trace_complete"] = report.trace_complete;
  summary["wall_time_ms"] = report.wall_time_ms;  // timing: varies run to run
  summary["config"] = report.config;
  out << summary.dump() << "\n";
}

/// Human-oriented aligned table with a trailing summary line.
inline void write_report_table(const RunReport& report, std::ostream& out) {
  if (report.records.empty()) {
    throw std::invalid_argument("write_report_table: refusing to write an empty report");
  }
  auto clip = [](const std::string& s, size_t width) {
    if (s.size() <= width) return s;
    return s.substr(0, width - 3) + "...";
  };
  out << std::left << std::setw(6) << "index" << std::setw(34) << "chosen" << std::setw(34)
      << "reference" << std::setw(4) << "ok" << std::setw(7) << "calls"
      << "flags\n";
  for (const auto& record : report.records) {
    std::string flags;
    if (record.used_fallback) flags += "fallback ";
    if (record.tie) flags += "tie ";
    if (!record.error.empty()) flags += "error ";
    out << std::left << std::setw(6) << record.index << std::setw(34)
        << clip(record.chosen, 32) << std::setw(34) << clip(record.reference, 32)
        << std::setw(4) << (record.correct ? "y" : "n") << std::setw(7)
        << record.backend_calls << flags << "\n";
  }
  std::ostringstream line;
  line << std::fixed << std::setprecision(4) << report.task_name << " [" << report.pipeline
       << "] " << metric_name(report.metric) << " " << report.metric_mean << ", accuracy "
       << report.accuracy << " (" << report.correct << "/" << report.examples << "), "
       << report.backend_calls << " backend calls, trace "
       << (report.trace_complete ? "complete" : "incomplete");
  out << line.str() << "\n";
}

}  // namespace thinksum::tasks
