#pragma once

/**
 * Table-driven mock backend.
 *
 * Answers scoring and generation queries from an in-memory table so pipelines
 * run bit-identically offline. Unknown scoring queries return a fallback
 * log-probability (default ln 1e-9) instead of throwing: a prompt the table
 * does not know behaves like an implausible continuation, and the pipeline
 * degrades instead of crashing.
 */

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "json.hpp"

#include "thinksum/backend.hpp"

namespace thinksum {

inline constexpr double kMockFallbackLogprob = -20.72326583694641;  // ln 1e-9

class MockBackend : public LmBackend {
 public:
  MockBackend() = default;

  void add_score(const std::string& prompt, const std::string& continuation, double logprob) {
    scores_[key(prompt, continuation)] = logprob;
  }

  void add_generation(const std::string& prompt, const std::string& text) {
    generations_[prompt] = text;
  }

  void set_fallback(double logprob) { fallback_ = logprob; }
  double fallback() const { return fallback_; }

  bool has_score(const std::string& prompt, const std::string& continuation) const {
    return scores_.count(key(prompt, continuation)) > 0;
  }

  std::string name() const override { return "mock"; }

  /**
   * Merge table entries from a JSON file:
   *   {"fallback_logprob": -20.72,                      // optional
   *    "scores": [{"prompt": p, "continuation": c, "logprob": l}, ...],
   *    "generations": [{"prompt": p, "text": t}, ...]}
   */
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("mock table not readable: " + path);
    nlohmann::json table;
    try {
      in >> table;
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("mock table " + path + ": " + e.what());
    }
    load_json(table);
  }

  void load_json(const nlohmann::json& table) {
    if (table.contains("fallback_logprob")) {
      fallback_ = table["fallback_logprob"].get<double>();
    }
    for (const auto& row : table.value("scores", nlohmann::json::array())) {
      add_score(row.at("prompt").get<std::string>(),
                row.at("continuation").get<std::string>(),
                row.at("logprob").get<double>());
    }
    for (const auto& row : table.value("generations", nlohmann::json::array())) {
      add_generation(row.at("prompt").get<std::string>(), row.at("text").get<std::string>());
    }
  }

 protected:
  double do_score(const std::string& prompt, const std::string& continuation) override {
    auto it = scores_.find(key(prompt, continuation));
    return it == scores_.end() ? fallback_ : it->second;
  }

  std::string do_generate(const std::string& prompt, const GenerationParams& params) override {
    auto it = generations_.find(prompt);
    if (it == generations_.end()) return "";
    return truncate_at_stop(it->second, params.stop);
  }

 private:
  static std::string key(const std::string& prompt, const std::string& continuation) {
    return prompt + '\x1f' + continuation;
  }

  std::unordered_map<std::string, double> scores_;
  std::unordered_map<std::string, std::string> generations_;
  double fallback_ = kMockFallbackLogprob;
};

}  // namespace thinksum
