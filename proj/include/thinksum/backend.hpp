#pragma once

/**
 * Language-model backend interface.
 *
 * Backends answer two kinds of queries: the log-probability of a continuation
 * given a prompt, and a sampled/greedy completion. Every query is counted on
 * the base class before dispatch, so call accounting holds for any
 * implementation and wrappers can be audited against the backends they wrap.
 *
 * Log-probabilities are natural logs accumulated at full precision;
 * probabilities are materialized only at normalization boundaries.
 */

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace thinksum {

struct GenerationParams {
  double temperature = 0.0;
  int max_tokens = 100;
  std::vector<std::string> stop;

  bool operator==(const GenerationParams& other) const {
    return temperature == other.temperature && max_tokens == other.max_tokens &&
           stop == other.stop;
  }
};

/// Transient failure (connection refused, 5xx, timeout): worth retrying.
class BackendUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The endpoint answered but not in the shape we require: not retryable.
class MalformedResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LmBackend {
 public:
  virtual ~LmBackend() = default;

  /// Sum of token log-probabilities of `continuation` given `prompt`.
  /// An empty prompt scores the continuation unconditionally.
  double score_continuation(const std::string& prompt, const std::string& continuation) {
    if (continuation.empty()) {
      throw std::invalid_argument("score_continuation: empty continuation");
    }
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_score(prompt, continuation);
  }

  std::string generate(const std::string& prompt, const GenerationParams& params = {}) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_generate(prompt, params);
  }

  virtual std::string name() const = 0;

  /// Queries answered by this backend since construction.
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 protected:
  virtual double do_score(const std::string& prompt, const std::string& continuation) = 0;
  virtual std::string do_generate(const std::string& prompt, const GenerationParams& params) = 0;

 private:
  std::atomic<std::uint64_t> calls_{0};
};

struct ScoredQuery {
  std::string prompt;
  std::string continuation;

  bool operator==(const ScoredQuery& other) const {
    return prompt == other.prompt && continuation == other.continuation;
  }
};

/// Unconditional sequence log-probability.
inline double score_full(LmBackend& backend, const std::string& text) {
  return backend.score_continuation("", text);
}

/// Cut `text` at the first occurrence of any stop sequence.
inline std::string truncate_at_stop(const std::string& text,
                                    const std::vector<std::string>& stop) {
  size_t cut = text.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    size_t at = text.find(s);
    if (at < cut) cut = at;
  }
  return text.substr(0, cut);
}

enum class ScoreError { kNone, kUnreachable, kMalformed, kOther };

/// One slot of a batch result: a score, or the error that query hit.
struct ScoreOutcome {
  double logprob = 0.0;
  ScoreError error = ScoreError::kNone;
  std::string message;

  bool ok() const { return error == ScoreError::kNone; }
};

/**
 * Score a batch of queries with at most `parallelism` in flight. Results are
 * in query order; a failing query reports its error positionally without
 * aborting the rest of the batch.
 */
inline std::vector<ScoreOutcome> batch_score(LmBackend& backend,
                                             const std::vector<ScoredQuery>& queries,
                                             int parallelism = 8) {
  if (parallelism < 1) {
    throw std::invalid_argument("batch_score: parallelism must be positive");
  }
  std::vector<ScoreOutcome> outcomes(queries.size());
  if (queries.empty()) return outcomes;

  auto run_one = [&](size_t i) {
    try {
      outcomes[i].logprob =
          backend.score_continuation(queries[i].prompt, queries[i].continuation);
    } catch (const BackendUnreachable& e) {
      outcomes[i] = {0.0, ScoreError::kUnreachable, e.what()};
    } catch (const MalformedResponse& e) {
      outcomes[i] = {0.0, ScoreError::kMalformed, e.what()};
    } catch (const std::exception& e) {
      outcomes[i] = {0.0, ScoreError::kOther, e.what()};
    }
  };

  if (parallelism == 1 || queries.size() == 1) {
    for (size_t i = 0; i < queries.size(); ++i) run_one(i);
    return outcomes;
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1, std::memory_order_relaxed); i < queries.size();
         i = next.fetch_add(1, std::memory_order_relaxed)) {
      run_one(i);
    }
  };

  size_t n_workers = std::min<size_t>(static_cast<size_t>(parallelism), queries.size());
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) workers.emplace_back(worker);
  for (auto& t : workers) t.join();
  return outcomes;
}

/// Collapse batch outcomes to plain scores, rethrowing the first error.
inline std::vector<double> scores_or_throw(const std::vector<ScoreOutcome>& outcomes) {
  std::vector<double> scores;
  scores.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    switch (o.error) {
      case ScoreError::kNone:
        scores.push_back(o.logprob);
        break;
      case ScoreError::kUnreachable:
        throw BackendUnreachable(o.message);
      case ScoreError::kMalformed:
        throw MalformedResponse(o.message);
      case ScoreError::kOther:
        throw std::runtime_error(o.message);
    }
  }
  return scores;
}

}  // namespace thinksum
