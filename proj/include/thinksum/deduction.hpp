#pragma once

/**
 * Assignment marginalization for ordering puzzles.
 *
 * A candidate statement is scored by summing, over every assignment of
 * positions to objects, the product of per-comparison probabilities of all
 * translated constraints plus the candidate itself; the scores are then
 * normalized over candidates. Comparisons are judged either by arithmetic
 * with fixed true/false probabilities or by a backend scoring "true" vs
 * "false" continuations. An optional binary latent variable sums over both
 * inequality orientations to absorb translations of inconsistent direction.
 */

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/aggregate.hpp"
#include "thinksum/backend.hpp"
#include "thinksum/constraints.hpp"
#include "thinksum/logprob.hpp"

namespace thinksum::sum {

/// Positions for N objects; entries in 1..N, not necessarily distinct.
struct Assignment {
  std::vector<int> positions;

  bool is_permutation() const {
    std::vector<bool> seen(positions.size(), false);
    for (int p : positions) {
      if (p < 1 || static_cast<size_t>(p) > positions.size() || seen[p - 1]) return false;
      seen[p - 1] = true;
    }
    return true;
  }
};

/**
 * Streams all N^N position vectors, or the N! permutations, in lexicographic
 * order. N is capped at 8 to guard against enumeration blow-up.
 */
class AssignmentEnumerator {
 public:
  AssignmentEnumerator(int n, bool permutations_only)
      : n_(n), permutations_only_(permutations_only) {
    if (n < 2 || n > 8) {
      throw std::invalid_argument("AssignmentEnumerator: N must be in [2, 8]");
    }
    current_.positions.resize(n);
    for (int i = 0; i < n; ++i) current_.positions[i] = permutations_only ? i + 1 : 1;
  }

  /// Next assignment, or nullopt when exhausted.
  std::optional<Assignment> next() {
    if (done_) return std::nullopt;
    Assignment out = current_;
    if (permutations_only_) {
      done_ = !std::next_permutation(current_.positions.begin(), current_.positions.end());
    } else {
      int i = n_ - 1;
      while (i >= 0 && current_.positions[i] == n_) {
        current_.positions[i] = 1;
        --i;
      }
      if (i < 0) {
        done_ = true;
      } else {
        ++current_.positions[i];
      }
    }
    return out;
  }

 private:
  int n_;
  bool permutations_only_;
  Assignment current_;
  bool done_ = false;
};

/// Judges a fully numeric comparison, returning the probability it is true.
class ComparisonEvaluator {
 public:
  virtual ~ComparisonEvaluator() = default;
  virtual double prob_true(long left, think::Relation relation, long right) = 0;
};

/// Arithmetic truth mapped to fixed probabilities: a high constant for true
/// and a low one for false. With p_false = 0 the marginalization degenerates
/// to exact satisfying-assignment counting.
class ExternalEvaluator final : public ComparisonEvaluator {
 public:
  explicit ExternalEvaluator(double p_true = 0.99, double p_false = 0.01)
      : p_true_(p_true), p_false_(p_false) {
    if (p_true < 0 || p_true > 1 || p_false < 0 || p_false > 1) {
      throw std::invalid_argument("ExternalEvaluator: probabilities must be in [0, 1]");
    }
  }

  double prob_true(long left, think::Relation relation, long right) override {
    bool truth = false;
    switch (relation) {
      case think::Relation::kLess: truth = left < right; break;
      case think::Relation::kGreater: truth = left > right; break;
      case think::Relation::kEqual: truth = left == right; break;
    }
    return truth ? p_true_ : p_false_;
  }

 private:
  double p_true_;
  double p_false_;
};

/// Asks the backend whether "x<y" is true: scores the "true" and "false"
/// continuations of a fixed question and normalizes. Memoized per triple,
/// so enumeration cost does not multiply backend calls.
class BackendEvaluator final : public ComparisonEvaluator {
 public:
  explicit BackendEvaluator(LmBackend& backend) : backend_(backend) {}

  double prob_true(long left, think::Relation relation, long right) override {
    const std::string expr = std::to_string(left) + think::relation_char(relation) +
                             std::to_string(right);
    auto it = memo_.find(expr);
    if (it != memo_.end()) return it->second;
    const std::string prompt = "True or false: " + expr + "? The answer is:";
    const double log_true = backend_.score_continuation(prompt, " true");
    const double log_false = backend_.score_continuation(prompt, " false");
    const double p = softmax(std::vector<double>{log_true, log_false})[0];
    memo_[expr] = p;
    return p;
  }

 private:
  LmBackend& backend_;
  std::map<std::string, double> memo_;
};

namespace detail {

inline long resolve_operand(const think::Operand& operand,
                            const std::vector<std::string>& object_names,
                            const Assignment& assignment) {
  if (!operand.is_object()) return operand.value;
  for (size_t i = 0; i < object_names.size(); ++i) {
    if (object_names[i] == operand.name) return assignment.positions[i];
  }
  throw std::invalid_argument("deduction: unknown object '" + operand.name + "'");
}

}  // namespace detail

/// Probability that `comparison` holds under `assignment`.
inline double evaluate_comparison(const think::Comparison& comparison,
                                  const std::vector<std::string>& object_names,
                                  const Assignment& assignment,
                                  ComparisonEvaluator& evaluator) {
  const long left = detail::resolve_operand(comparison.left, object_names, assignment);
  const long right = detail::resolve_operand(comparison.right, object_names, assignment);
  return evaluator.prob_true(left, comparison.relation, right);
}

struct DeductionOptions {
  bool permutations_only = false;       // restrict the sum to permutations
  bool reversal_marginalization = false;  // also sum both inequality orientations
};

/**
 * Posterior over candidate statements given the translated constraint set:
 * per candidate, sum over assignments of the product of comparison
 * probabilities for every constraint plus the candidate, then normalize.
 * Orientations are weighted equally when reversal marginalization is on.
 * Summation order is fixed, so results are deterministic.
 *
 * An empty constraint set degrades to candidate-only scoring; that and any
 * unknown-object candidates are reported through `warnings`.
 */
inline PosteriorVector deduction_candidate_posterior(
    const think::ConstraintSet& constraints, const std::vector<think::Comparison>& candidates,
    ComparisonEvaluator& evaluator, const DeductionOptions& options = {},
    std::vector<std::string>* warnings = nullptr) {
  if (candidates.empty()) {
    throw std::invalid_argument("deduction_candidate_posterior: no candidates");
  }
  if (constraints.constraints.empty() && warnings) {
    warnings->push_back("empty constraint set: scoring candidates alone");
  }

  const auto& names = constraints.object_names;
  const int n = static_cast<int>(names.size());

  std::vector<think::Comparison> orientations_cache;
  std::vector<double> log_scores;
  std::vector<std::string> labels;
  log_scores.reserve(candidates.size());
  labels.reserve(candidates.size());

  const int n_orientations = options.reversal_marginalization ? 2 : 1;
  for (const auto& candidate : candidates) {
    OnlineLogSumExp total;
    for (int orientation = 0; orientation < n_orientations; ++orientation) {
      const think::Comparison cand =
          orientation == 0 ? candidate : candidate.reversed();
      AssignmentEnumerator enumerator(n, options.permutations_only);
      while (auto assignment = enumerator.next()) {
        double log_product = 0.0;
        for (const auto& constraint : constraints.constraints) {
          const think::Comparison oriented =
              orientation == 0 ? constraint : constraint.reversed();
          const double p = evaluate_comparison(oriented, names, *assignment, evaluator);
          log_product += p > 0.0 ? std::log(p) : kNegInf;
        }
        const double pc = evaluate_comparison(cand, names, *assignment, evaluator);
        log_product += pc > 0.0 ? std::log(pc) : kNegInf;
        total.add(log_product);
      }
    }
    // Uniform orientation prior; the constant cancels under normalization.
    log_scores.push_back(total.value() - std::log(static_cast<double>(n_orientations)));
    labels.push_back(candidate.to_string());
  }

  return posterior_normalize(log_scores, labels);
}

}  // namespace thinksum::sum
