#pragma once

/**
 * Log-domain numeric primitives shared by every aggregation routine.
 *
 * Convention: all log-probabilities are natural logs and are carried at full
 * precision; probabilities are materialized only at normalization boundaries.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace thinksum {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum_i exp(x_i)), max-shifted. Returns -inf for an all--inf input.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("log_sum_exp: empty input");
  }
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) {
    return m;  // all -inf (or a stray +inf/NaN propagates)
  }
  double sum = 0.0;
  for (double x : xs) {
    sum += std::exp(x - m);
  }
  return m + std::log(sum);
}

inline double log_sum_exp(const std::vector<double>& xs) {
  return log_sum_exp(std::span<const double>(xs));
}

/// log((1/n) sum_i exp(x_i)). For n identical entries this is exactly x.
inline double log_mean_exp(std::span<const double> xs) {
  return log_sum_exp(xs) - std::log(static_cast<double>(xs.size()));
}

inline double log_mean_exp(const std::vector<double>& xs) {
  return log_mean_exp(std::span<const double>(xs));
}

/// Max-shifted softmax. Output sums to 1 (exactly, up to the final divisions).
/// An all--inf input (every outcome impossible) normalizes to uniform.
inline std::vector<double> softmax(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("softmax: empty input");
  }
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) {
    return std::vector<double>(xs.size(), 1.0 / static_cast<double>(xs.size()));
  }
  std::vector<double> out(xs.size());
  double sum = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    out[i] = std::exp(xs[i] - m);
    sum += out[i];
  }
  for (double& v : out) {
    v /= sum;
  }
  return out;
}

inline std::vector<double> softmax(const std::vector<double>& xs) {
  return softmax(std::span<const double>(xs));
}

/// Streaming log_sum_exp with running max-shift: add terms one at a time in
/// a fixed order and read the total without materializing the whole vector.
struct OnlineLogSumExp {
  double max_term = kNegInf;
  double shifted_sum = 0.0;

  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_term) {
      shifted_sum += std::exp(x - max_term);
    } else {
      shifted_sum = shifted_sum * std::exp(max_term - x) + 1.0;
      max_term = x;
    }
  }

  double value() const {
    return max_term == kNegInf ? kNegInf : max_term + std::log(shifted_sum);
  }
};

}  // namespace thinksum
