#pragma once

/**
 * Task-layer types shared by all pipelines: the benchmark instance, the
 * run configuration (defaults match the published hyperparameters), the
 * query trace, and the pipeline execution context.
 *
 * Pipelines never talk to a backend directly; they go through
 * PipelineContext, which records every query in issue order. That makes the
 * trace deterministic even when scoring is batched, and trace length always
 * equals the number of backend calls the pipeline caused.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "thinksum/aggregate.hpp"
#include "thinksum/backend.hpp"
#include "thinksum/deduction.hpp"
#include "thinksum/prompts.hpp"

namespace thinksum::tasks {

/// One benchmark example. Multiple-choice tasks carry choices and their
/// reference scores; generative tasks carry a reference target string.
struct TaskInstance {
  std::string input;
  std::vector<std::string> choices;              // candidate answers, in file order
  std::map<std::string, double> target_scores;   // choice -> reference score
  std::string target;                            // generative reference
  nlohmann::ordered_json metadata;               // task-specific fields

  /// Reference answer: the highest-scoring choice (lowest index on ties),
  /// or the generative target.
  std::string reference() const {
    if (choices.empty()) return target;
    const std::string* best = nullptr;
    double best_score = 0.0;
    for (const auto& choice : choices) {
      auto it = target_scores.find(choice);
      if (it == target_scores.end()) continue;
      if (!best || it->second > best_score) {
        best = &choice;
        best_score = it->second;
      }
    }
    return best ? *best : target;
  }

  bool has_metadata(const std::string& key) const { return metadata.contains(key); }

  std::string metadata_string(const std::string& key) const {
    if (!metadata.contains(key) || !metadata[key].is_string()) {
      throw std::invalid_argument("instance metadata missing string field '" + key + "'");
    }
    return metadata[key].get<std::string>();
  }

  std::vector<std::string> metadata_list(const std::string& key) const {
    if (!metadata.contains(key) || !metadata[key].is_array()) {
      throw std::invalid_argument("instance metadata missing list field '" + key + "'");
    }
    std::vector<std::string> out;
    for (const auto& v : metadata[key]) out.push_back(v.get<std::string>());
    return out;
  }
};

enum class PipelineKind {
  kOddOneOut,              // list-of-words product rule
  kOddOneOutMinorityVote,  // fact substitution + per-statement votes
  kOddOneOutLvm,           // fact substitution + latent-class model
  kPhraseRelatedness,
  kCodenames,
  kInventedWords,
  kNovelConcepts,
  kSports,
  kKnownUnknowns,
  kMisconceptions,
  kEmojiMovie,
  kLanguageId,
  kCodeLine,
  kLogicalDeduction,
  kTranslationQa,
  kDirect,
  kAuxiliaryKnowledge,
  kChainOfThought,
};

inline const char* pipeline_kind_name(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::kOddOneOut: return "odd-one-out";
    case PipelineKind::kOddOneOutMinorityVote: return "odd-one-out-mv";
    case PipelineKind::kOddOneOutLvm: return "odd-one-out-lvm";
    case PipelineKind::kPhraseRelatedness: return "phrase-relatedness";
    case PipelineKind::kCodenames: return "codenames";
    case PipelineKind::kInventedWords: return "invented-words";
    case PipelineKind::kNovelConcepts: return "novel-concepts";
    case PipelineKind::kSports: return "sports";
    case PipelineKind::kKnownUnknowns: return "known-unknowns";
    case PipelineKind::kMisconceptions: return "misconceptions";
    case PipelineKind::kEmojiMovie: return "emoji-movie";
    case PipelineKind::kLanguageId: return "language-id";
    case PipelineKind::kCodeLine: return "code-line";
    case PipelineKind::kLogicalDeduction: return "logical-deduction";
    case PipelineKind::kTranslationQa: return "translation-qa";
    case PipelineKind::kDirect: return "direct";
    case PipelineKind::kAuxiliaryKnowledge: return "auxiliary-knowledge";
    case PipelineKind::kChainOfThought: return "chain-of-thought";
  }
  return "?";
}

inline PipelineKind pipeline_kind_from_name(const std::string& name) {
  static const std::map<std::string, PipelineKind> kNames = {
      {"odd-one-out", PipelineKind::kOddOneOut},
      {"odd-one-out-mv", PipelineKind::kOddOneOutMinorityVote},
      {"odd-one-out-lvm", PipelineKind::kOddOneOutLvm},
      {"phrase-relatedness", PipelineKind::kPhraseRelatedness},
      {"codenames", PipelineKind::kCodenames},
      {"invented-words", PipelineKind::kInventedWords},
      {"novel-concepts", PipelineKind::kNovelConcepts},
      {"sports", PipelineKind::kSports},
      {"known-unknowns", PipelineKind::kKnownUnknowns},
      {"misconceptions", PipelineKind::kMisconceptions},
      {"emoji-movie", PipelineKind::kEmojiMovie},
      {"language-id", PipelineKind::kLanguageId},
      {"code-line", PipelineKind::kCodeLine},
      {"logical-deduction", PipelineKind::kLogicalDeduction},
      {"translation-qa", PipelineKind::kTranslationQa},
      {"direct", PipelineKind::kDirect},
      {"auxiliary-knowledge", PipelineKind::kAuxiliaryKnowledge},
      {"chain-of-thought", PipelineKind::kChainOfThought},
  };
  auto it = kNames.find(name);
  if (it == kNames.end()) throw std::invalid_argument("unknown pipeline kind '" + name + "'");
  return it->second;
}

/// Run configuration. Defaults are the published experimental settings:
/// greedy decoding, 100 generation tokens (1000 for fact mining), 2 examples
/// per invented word, 4 alternatives with a 0.01 plausibility threshold and
/// a 1/N_e margin, 5 generated differences, 200 EM iterations.
struct TaskConfig {
  double temperature = 0.0;             // greedy decoding
  double diversity_temperature = 0.5;   // alternative/translation sampling
  int max_tokens = 100;                 // example and list generation
  int fact_max_tokens = 1000;           // fact generation

  int n_examples = 2;       // examples generated per invented word
  int n_alternatives = 4;   // generated players / answers (N_e)
  int n_differences = 5;    // generated differences (N_d)
  int n_translations = 0;   // misconceptions translation mixture; 0 = score as-is

  double sports_threshold = 0.01;  // posterior below this is implausible
  double known_unknown_margin() const { return 1.0 / n_alternatives; }

  std::uint64_t seed = 0;
  std::size_t em_iterations = 200;
  std::size_t em_classes = 2;

  sum::DeductionOptions deduction;
  double p_true = 0.99;
  double p_false = 0.01;
  bool deduction_backend_evaluator = false;  // judge inequalities via the LM

  bool emoji_translation = false;  // emoji-movie: translate emoji to words first
  bool length_normalize = false;   // divide candidate log-scores by byte length

  int parallelism = 8;
};

struct TraceEntry {
  enum class Kind { kScore, kGenerate };
  Kind kind = Kind::kScore;
  std::string prompt;
  std::string continuation;  // score queries
  double logprob = 0.0;      // score queries
  std::string output;        // generations
  GenerationParams params;   // generations
};

/// What a pipeline returns: the chosen answer, the per-candidate posterior,
/// raw log-scores, diagnostics, and the full query trace.
struct PipelineResult {
  std::string chosen;
  std::vector<std::string> chosen_list;  // multi-answer tasks (top-k)
  sum::PosteriorVector per_choice;
  std::vector<double> per_choice_logprobs;
  std::vector<std::string> warnings;
  bool used_fallback = false;
  bool tie = false;
  std::vector<TraceEntry> trace;
};

/**
 * Execution context handed to every pipeline: the backend, the
 * configuration, the prompt library, and the trace. Scoring can fan out over
 * worker threads, but trace entries are appended in query order afterwards,
 * so two runs against a deterministic backend produce identical traces.
 */
class PipelineContext {
 public:
  PipelineContext(LmBackend& backend, const TaskConfig& config,
                  const think::PromptLibrary& prompts)
      : backend_(backend), config_(config), prompts_(prompts) {}

  LmBackend& backend() { return backend_; }
  const TaskConfig& config() const { return config_; }
  const think::PromptLibrary& prompts() const { return prompts_; }

  double score(const std::string& prompt, const std::string& continuation) {
    double v = backend_.score_continuation(prompt, continuation);
    trace_.push_back({TraceEntry::Kind::kScore, prompt, continuation, v, "", {}});
    return v;
  }

  std::vector<double> score_batch(const std::vector<ScoredQuery>& queries) {
    auto outcomes = batch_score(backend_, queries, config_.parallelism);
    std::vector<double> scores = scores_or_throw(outcomes);
    for (size_t i = 0; i < queries.size(); ++i) {
      trace_.push_back({TraceEntry::Kind::kScore, queries[i].prompt, queries[i].continuation,
                        scores[i], "", {}});
    }
    return scores;
  }

  std::string generate(const std::string& prompt, const GenerationParams& params) {
    std::string out = backend_.generate(prompt, params);
    trace_.push_back({TraceEntry::Kind::kGenerate, prompt, "", 0.0, out, params});
    return out;
  }

  std::vector<TraceEntry> take_trace() { return std::move(trace_); }

 private:
  LmBackend& backend_;
  const TaskConfig& config_;
  const think::PromptLibrary& prompts_;
  std::vector<TraceEntry> trace_;
};

/// LmBackend view over a context, for components that expect a backend
/// (e.g. the comparison evaluator); queries land in the context's trace.
class ContextScoringBackend : public LmBackend {
 public:
  explicit ContextScoringBackend(PipelineContext& context) : context_(context) {}

  std::string name() const override { return context_.backend().name(); }

 protected:
  double do_score(const std::string& prompt, const std::string& continuation) override {
    return context_.score(prompt, continuation);
  }

  std::string do_generate(const std::string& prompt, const GenerationParams& params) override {
    return context_.generate(prompt, params);
  }

 private:
  PipelineContext& context_;
};

}  // namespace thinksum::tasks
