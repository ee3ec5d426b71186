#pragma once

/// Task file loading. Tasks are JSON documents in the usual benchmark shape:
/// a name, optional task-level metadata (including a default pipeline and
/// config overrides), and an `examples` array whose entries carry `input`,
/// `target_scores` (choice -> score, order preserved) or `target`, and
/// optional per-example metadata. Errors name the offending example index.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "thinksum/task.hpp"

namespace thinksum::tasks {

struct TaskFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TaskFile {
  std::string name;
  std::string description;
  std::string pipeline;  // default pipeline kind name, may be empty
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  std::vector<TaskInstance> examples;
};

namespace detail {

inline TaskInstance parse_example(const nlohmann::ordered_json& row, size_t index) {
  const std::string where = "example " + std::to_string(index);
  if (!row.is_object()) throw TaskFormatError(where + ": not an object");
  TaskInstance instance;
  if (row.contains("input")) {
    if (!row["input"].is_string()) throw TaskFormatError(where + ": input must be a string");
    instance.input = row["input"].get<std::string>();
  }
  if (row.contains("choices")) {
    // Bare candidate pool (e.g. the word board) without reference scores.
    if (!row["choices"].is_array()) throw TaskFormatError(where + ": choices must be an array");
    for (const auto& c : row["choices"]) {
      if (!c.is_string()) throw TaskFormatError(where + ": choices must be strings");
      instance.choices.push_back(c.get<std::string>());
    }
  }
  if (row.contains("target_scores")) {
    const auto& scores = row["target_scores"];
    if (!scores.is_object()) {
      throw TaskFormatError(where + ": target_scores must be an object");
    }
    for (const auto& [choice, score] : scores.items()) {
      if (!score.is_number()) {
        throw TaskFormatError(where + ": target_scores values must be numbers");
      }
      if (!row.contains("choices")) instance.choices.push_back(choice);
      instance.target_scores[choice] = score.get<double>();
    }
    if (instance.choices.empty()) {
      throw TaskFormatError(where + ": target_scores is empty");
    }
  }
  if (row.contains("target")) {
    if (!row["target"].is_string()) throw TaskFormatError(where + ": target must be a string");
    instance.target = row["target"].get<std::string>();
  }
  if (instance.choices.empty() && instance.target.empty()) {
    throw TaskFormatError(where + ": needs target_scores or target");
  }
  if (row.contains("metadata")) {
    if (!row["metadata"].is_object()) {
      throw TaskFormatError(where + ": metadata must be an object");
    }
    instance.metadata = row["metadata"];
  }
  return instance;
}

}  // namespace detail

inline TaskFile parse_task_file(const nlohmann::ordered_json& doc, const std::string& origin) {
  if (!doc.is_object()) throw TaskFormatError(origin + ": task file must be a JSON object");
  TaskFile task;
  task.name = doc.value("name", std::string{});
  task.description = doc.value("description", std::string{});
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) {
      throw TaskFormatError(origin + ": metadata must be an object");
    }
    task.metadata = doc["metadata"];
    if (task.metadata.contains("pipeline")) {
      task.pipeline = task.metadata["pipeline"].get<std::string>();
      pipeline_kind_from_name(task.pipeline);  // validate eagerly
    }
  }
  if (!doc.contains("examples") || !doc["examples"].is_array() || doc["examples"].empty()) {
    throw TaskFormatError(origin + ": needs a non-empty examples array");
  }
  size_t index = 0;
  for (const auto& row : doc["examples"]) {
    task.examples.push_back(detail::parse_example(row, index++));
  }
  return task;
}

inline TaskFile load_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TaskFormatError("cannot open task file: " + path);
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw TaskFormatError(path + ": " + e.what());
  }
  return parse_task_file(doc, path);
}

/// Apply task-level config overrides (metadata "config" object). Unknown
/// keys are rejected so typos surface instead of silently using defaults.
inline void apply_config_overrides(const nlohmann::ordered_json& overrides, TaskConfig& config) {
  if (!overrides.is_object()) throw TaskFormatError("config overrides must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "temperature") config.temperature = value.get<double>();
    else if (key == "diversity_temperature") config.diversity_temperature = value.get<double>();
    else if (key == "max_tokens") config.max_tokens = value.get<int>();
    else if (key == "fact_max_tokens") config.fact_max_tokens = value.get<int>();
    else if (key == "n_examples") config.n_examples = value.get<int>();
    else if (key == "n_alternatives") config.n_alternatives = value.get<int>();
    else if (key == "n_differences") config.n_differences = value.get<int>();
    else if (key == "n_translations") config.n_translations = value.get<int>();
    else if (key == "sports_threshold") config.sports_threshold = value.get<double>();
    else if (key == "seed") config.seed = value.get<unsigned>();
    else if (key == "em_iterations") config.em_iterations = value.get<int>();
    else if (key == "em_classes") config.em_classes = value.get<int>();
    else if (key == "p_true") config.p_true = value.get<double>();
    else if (key == "p_false") config.p_false = value.get<double>();
    else if (key == "permutations_only") config.deduction.permutations_only = value.get<bool>();
    else if (key == "reversal_marginalization")
      config.deduction.reversal_marginalization = value.get<bool>();
    else if (key == "deduction_backend_evaluator")
      config.deduction_backend_evaluator = value.get<bool>();
    else if (key == "emoji_translation") config.emoji_translation = value.get<bool>();
    else if (key == "length_normalize") config.length_normalize = value.get<bool>();
    else if (key == "parallelism") config.parallelism = value.get<int>();
    else throw TaskFormatError("unknown config override: " + key);
  }
}

}  // namespace thinksum::tasks
