#pragma once

/// Scoring metrics for harness reports: exact match, set match over
/// comma-separated lists, and sentence BLEU (uniform weights over 1..4-grams,
/// add-one smoothed precisions, standard brevity penalty).

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace thinksum::tasks {

namespace metrics_detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> whitespace_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

inline std::map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) key += (j ? "\x1f" : "") + tokens[i + j];
    ++counts[key];
  }
  return counts;
}

}  // namespace metrics_detail

inline bool exact_match(const std::string& prediction, const std::string& reference) {
  return metrics_detail::trim(prediction) == metrics_detail::trim(reference);
}

/// Order-insensitive match of comma-separated lists.
inline bool exact_set_match(const std::string& prediction, const std::string& reference) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, ',')) {
      part = metrics_detail::trim(part);
      if (!part.empty()) parts.push_back(part);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
  };
  return split(prediction) == split(reference);
}

inline constexpr int kBleuMaxOrder = 4;

/// Sentence BLEU with uniform 1..4-gram weights. Each clipped precision is
/// add-one smoothed ((matches+1)/(total+1)), so a zero count never zeroes
/// the whole score; the brevity penalty exp(1 - r/c) applies when the
/// candidate is shorter than the reference. Empty candidate scores 0.
inline double bleu(const std::string& prediction, const std::string& reference) {
  const auto candidate = metrics_detail::whitespace_tokens(prediction);
  const auto ref = metrics_detail::whitespace_tokens(reference);
  if (candidate.empty()) return 0.0;
  if (ref.empty()) return 0.0;

  double log_precision_sum = 0.0;
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    const auto cand_counts = metrics_detail::ngram_counts(candidate, n);
    const auto ref_counts = metrics_detail::ngram_counts(ref, n);
    int total = 0;
    int matched = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    log_precision_sum += std::log((matched + 1.0) / (total + 1.0));
  }

  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_precision_sum / kBleuMaxOrder);
}

}  // namespace thinksum::tasks
