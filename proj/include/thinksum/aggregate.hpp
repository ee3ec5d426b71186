#pragma once

/**
 * Elementary aggregation ("Sum") operations: mixtures, products, posteriors,
 * threshold decisions, and the score-matrix minority vote.
 *
 * Tie-breaking everywhere is lowest index, so repeated runs give identical
 * answers.
 */

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/logprob.hpp"

namespace thinksum::sum {

/// Arithmetic mean of exp(log_probs), i.e. the mixture weight of a completion
/// averaged over equally weighted component prompts. Max-shifted so that n
/// identical entries yield exp(x) exactly.
inline double mixture_aggregate(std::span<const double> log_probs) {
  if (log_probs.empty()) {
    throw std::invalid_argument("mixture_aggregate: empty input");
  }
  const double m = *std::max_element(log_probs.begin(), log_probs.end());
  if (m == kNegInf) {
    return 0.0;
  }
  double sum = 0.0;
  for (double lp : log_probs) {
    sum += std::exp(lp - m);
  }
  return std::exp(m) * (sum / static_cast<double>(log_probs.size()));
}

inline double mixture_aggregate(const std::vector<double>& log_probs) {
  return mixture_aggregate(std::span<const double>(log_probs));
}

/// Log of the product of likelihoods: the sum of log-probabilities.
inline double product_aggregate(std::span<const double> log_probs) {
  if (log_probs.empty()) {
    throw std::invalid_argument("product_aggregate: empty input");
  }
  double total = 0.0;
  for (double lp : log_probs) {
    total += lp;
  }
  return total;
}

inline double product_aggregate(const std::vector<double>& log_probs) {
  return product_aggregate(std::span<const double>(log_probs));
}

/// Normalized candidate posterior. `probabilities` sums to 1.
struct PosteriorVector {
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  size_t size() const { return labels.size(); }

  double probability_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return probabilities[i];
    }
    throw std::invalid_argument("PosteriorVector: unknown label '" + label + "'");
  }

  /// Index of the highest-probability label; ties go to the lowest index.
  size_t argmax() const {
    size_t best = 0;
    for (size_t i = 1; i < probabilities.size(); ++i) {
      if (probabilities[i] > probabilities[best]) best = i;
    }
    return best;
  }
};

/// Softmax over raw log-probabilities, paired with candidate labels.
inline PosteriorVector posterior_normalize(std::span<const double> log_probs,
                                           std::vector<std::string> labels) {
  if (log_probs.empty()) {
    throw std::invalid_argument("posterior_normalize: empty input");
  }
  if (log_probs.size() != labels.size()) {
    throw std::invalid_argument("posterior_normalize: length mismatch");
  }
  PosteriorVector out;
  out.labels = std::move(labels);
  out.probabilities = softmax(log_probs);
  return out;
}

inline PosteriorVector posterior_normalize(const std::vector<double>& log_probs,
                                           std::vector<std::string> labels) {
  return posterior_normalize(std::span<const double>(log_probs), std::move(labels));
}

enum class ThresholdMode {
  kBelowReject,  // decision is "reject" iff p(target) < threshold
  kMargin,       // decision is "accept" iff p(target) beats the runner-up by >= threshold
};

enum class ThresholdDecision {
  kImplausible,  // below-reject mode: posterior under the threshold
  kPlausible,    // below-reject mode: posterior at or above the threshold
  kKnown,        // margin mode: target leads by at least the margin
  kUnknown,      // margin mode: lead smaller than the margin
};

/// Plausibility / knownness decision from a normalized posterior.
inline ThresholdDecision threshold_decide(const PosteriorVector& posterior,
                                          const std::string& target,
                                          double threshold,
                                          ThresholdMode mode) {
  size_t target_idx = posterior.labels.size();
  for (size_t i = 0; i < posterior.labels.size(); ++i) {
    if (posterior.labels[i] == target) {
      target_idx = i;
      break;
    }
  }
  if (target_idx == posterior.labels.size()) {
    throw std::invalid_argument("threshold_decide: unknown target '" + target + "'");
  }
  const double p_target = posterior.probabilities[target_idx];
  if (mode == ThresholdMode::kBelowReject) {
    return p_target < threshold ? ThresholdDecision::kImplausible
                                : ThresholdDecision::kPlausible;
  }
  double best_other = 0.0;
  for (size_t i = 0; i < posterior.probabilities.size(); ++i) {
    if (i != target_idx && posterior.probabilities[i] > best_other) {
      best_other = posterior.probabilities[i];
    }
  }
  return (p_target - best_other) >= threshold ? ThresholdDecision::kKnown
                                              : ThresholdDecision::kUnknown;
}

/// Rectangular grid of log-probabilities with labeled rows and columns.
struct ScoreMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> values;  // row-major, rows() * cols()

  ScoreMatrix() = default;
  ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> cols)
      : row_labels(std::move(rows)),
        col_labels(std::move(cols)),
        values(row_labels.size() * col_labels.size(), 0.0) {}

  size_t rows() const { return row_labels.size(); }
  size_t cols() const { return col_labels.size(); }

  double& at(size_t r, size_t c) { return values[r * cols() + c]; }
  double at(size_t r, size_t c) const { return values[r * cols() + c]; }

  std::span<const double> row(size_t r) const {
    return std::span<const double>(values).subspan(r * cols(), cols());
  }

  ScoreMatrix transposed() const {
    ScoreMatrix t(col_labels, row_labels);
    for (size_t r = 0; r < rows(); ++r) {
      for (size_t c = 0; c < cols(); ++c) {
        t.at(c, r) = at(r, c);
      }
    }
    return t;
  }

  bool all_finite() const {
    for (double v : values) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

/// Minority vote over a statements-by-items matrix: each statement row votes
/// for its least-likely item (argmin over columns); the modal item wins.
/// All ties resolve to the lowest column index.
inline std::string minority_vote(const ScoreMatrix& matrix) {
  if (matrix.rows() < 2 || matrix.cols() < 2) {
    throw std::invalid_argument("minority_vote: need at least 2 statements and 2 items");
  }
  std::vector<size_t> votes(matrix.cols(), 0);
  for (size_t r = 0; r < matrix.rows(); ++r) {
    size_t worst = 0;
    for (size_t c = 1; c < matrix.cols(); ++c) {
      if (matrix.at(r, c) < matrix.at(r, worst)) worst = c;
    }
    ++votes[worst];
  }
  size_t best = 0;
  for (size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return matrix.col_labels[best];
}

}  // namespace thinksum::sum
