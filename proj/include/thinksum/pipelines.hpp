#pragma once

/**
 * Task pipelines: one solver per benchmark family, each a composition of a
 * Think step (prompt expansion, generation, parsing) and a Sum step
 * (aggregation over the expanded set). Every solver degrades to direct
 * choice scoring with a flagged result when its Think stage produces nothing
 * usable, so a harness run always completes.
 *
 * Instance expectations (metadata fields) per kind are documented on each
 * solver. All solvers go through PipelineContext, so results carry a full
 * query trace in issue order.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/aggregate.hpp"
#include "thinksum/backend.hpp"
#include "thinksum/constraints.hpp"
#include "thinksum/deduction.hpp"
#include "thinksum/emoji.hpp"
#include "thinksum/latent_class.hpp"
#include "thinksum/parsing.hpp"
#include "thinksum/prompts.hpp"
#include "thinksum/slot_template.hpp"
#include "thinksum/task.hpp"

namespace thinksum::tasks {

namespace detail {

inline size_t argmax_lowest(const std::vector<double>& xs, bool* tie = nullptr) {
  size_t best = 0;
  for (size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[best]) best = i;
  }
  if (tie) {
    *tie = false;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i != best && xs[i] == xs[best]) *tie = true;
    }
  }
  return best;
}

inline size_t argmin_lowest(const std::vector<double>& xs, bool* tie = nullptr) {
  size_t best = 0;
  for (size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < xs[best]) best = i;
  }
  if (tie) {
    *tie = false;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i != best && xs[i] == xs[best]) *tie = true;
    }
  }
  return best;
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(const std::string& s) { return think::detail::trim_copy(s); }

/// Cut at the first period or line break, exclusive, and trim.
inline std::string first_clause(const std::string& text) {
  size_t cut = text.size();
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' || text[i] == '\n') {
      cut = i;
      break;
    }
  }
  return trim(text.substr(0, cut));
}

/// Fill chosen / per_choice / per_choice_logprobs for a multiple-choice
/// result. Scores are log-probabilities; when `higher_is_better` is false
/// the sign is flipped for selection and normalization.
inline void finish_choice_result(PipelineResult& result, const std::vector<std::string>& choices,
                                 const std::vector<double>& log_scores, bool higher_is_better) {
  std::vector<double> oriented = log_scores;
  if (!higher_is_better) {
    for (double& v : oriented) v = -v;
  }
  bool tie = false;
  size_t best = argmax_lowest(oriented, &tie);
  result.chosen = choices[best];
  result.tie = result.tie || tie;
  if (tie) result.warnings.push_back("tie: equal scores resolved to lowest index");
  result.per_choice = sum::posterior_normalize(oriented, choices);
  result.per_choice_logprobs = log_scores;
}

inline double maybe_length_normalize(double logprob, const std::string& text,
                                     const TaskConfig& config) {
  if (!config.length_normalize || text.empty()) return logprob;
  return logprob / static_cast<double>(text.size());
}

/// Direct choice scoring: p(choice | input), normalized over the choices.
inline std::vector<double> direct_choice_scores(PipelineContext& context,
                                                const TaskInstance& instance,
                                                const std::string& prompt_override = "") {
  if (instance.choices.empty()) {
    throw std::invalid_argument("direct scoring needs a multiple-choice instance");
  }
  const std::string prompt =
      (prompt_override.empty() ? instance.input : prompt_override) + "\n";
  std::vector<ScoredQuery> queries;
  queries.reserve(instance.choices.size());
  for (const auto& choice : instance.choices) queries.push_back({prompt, choice});
  std::vector<double> scores = context.score_batch(queries);
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] = maybe_length_normalize(scores[i], instance.choices[i], context.config());
  }
  return scores;
}

inline PipelineResult direct_fallback(PipelineContext& context, const TaskInstance& instance,
                                      PipelineResult result, const std::string& reason) {
  result.used_fallback = true;
  result.warnings.push_back(reason + ": falling back to direct scoring");
  finish_choice_result(result, instance.choices, direct_choice_scores(context, instance), true);
  return result;
}

/// Replace occurrences of each nonce word (prefix-matched, so inflected
/// forms count) with a slot; trailing "s"/"es" becomes a plural slot.
inline think::SlotTemplate nonce_template(const std::string& text,
                                          const std::vector<std::string>& nonce_words) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i++]);
      continue;
    }
    size_t begin = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    const std::string token = text.substr(begin, i - begin);
    const std::string token_lower = lower(token);
    bool replaced = false;
    for (size_t w = 0; w < nonce_words.size(); ++w) {
      const std::string stem = lower(nonce_words[w]);
      if (token_lower.rfind(stem, 0) != 0) continue;
      const std::string suffix = token_lower.substr(stem.size());
      if (suffix.empty()) {
        out += "{{w" + std::to_string(w) + "}}";
      } else if (suffix == "s" || suffix == "es") {
        out += "{{w" + std::to_string(w) + "p}}";
      } else {
        continue;  // unrelated word sharing the prefix
      }
      replaced = true;
      break;
    }
    if (!replaced) out += token;
  }
  return think::SlotTemplate(out);
}

/// Bindings for a nonce template: the replacement itself plus its plural.
inline std::map<std::string, std::string> nonce_bindings(
    const std::vector<std::string>& replacements) {
  std::map<std::string, std::string> bindings;
  for (size_t w = 0; w < replacements.size(); ++w) {
    const std::string& r = replacements[w];
    bindings["w" + std::to_string(w)] = r;
    bindings["w" + std::to_string(w) + "p"] =
        think::detail::phrase_is_singular(r) ? think::pluralize(r) : r;
  }
  return bindings;
}

inline std::string metadata_or_input(const TaskInstance& instance, const std::string& key) {
  return instance.has_metadata(key) ? instance.metadata_string(key) : instance.input;
}

/// Match a decision word ("plausible") to the instance's choice spelling.
inline std::string choice_like(const TaskInstance& instance, const std::string& word) {
  for (const auto& choice : instance.choices) {
    if (lower(choice) == lower(word)) return choice;
  }
  return word;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Semantic relatedness family
// ---------------------------------------------------------------------------

enum class RelatednessMode { kListOfWords, kMinorityVote, kLvm, kTopK };

/**
 * Odd one out / Phrase relatedness / Codenames.
 *
 * list-of-words (Odd one out): pairwise matrix P_ij = p(w_j | prefix(w_i))
 * over the choice words, product-aggregated across each row excluding the
 * diagonal (a word following itself is no evidence); the odd word is the
 * argmin row. minority-vote and lvm modes first mine difference statements
 * between the first two words, substitute every word into every statement
 * template, and vote / fit the latent-class model on the score matrix.
 * top-k (Codenames, metadata: query, k) and Phrase relatedness (metadata:
 * query) score the query after each candidate's list-of-words prefix.
 */
inline PipelineResult solve_relatedness(PipelineContext& context, const TaskInstance& instance,
                                        RelatednessMode mode) {
  PipelineResult result;
  const auto& words = instance.choices;
  if (words.size() < 2) {
    throw std::invalid_argument("relatedness: need at least 2 candidate words");
  }

  if (mode == RelatednessMode::kTopK ||
      (mode == RelatednessMode::kListOfWords && instance.has_metadata("query"))) {
    // Score the query phrase after each candidate's prefix.
    const std::string query = instance.metadata_string("query");
    std::vector<ScoredQuery> queries;
    for (const auto& w : words) {
      think::PromptRecipe recipe{think::RecipeKind::kListOfWordsPrefix, {{"word", w}}, 0};
      queries.push_back({think::build_prompt(recipe), query});
    }
    std::vector<double> scores = context.score_batch(queries);

    if (mode == RelatednessMode::kTopK) {
      int k = instance.metadata.contains("k") ? instance.metadata["k"].get<int>() : 1;
      if (k < 1 || static_cast<size_t>(k) > words.size()) {
        throw std::invalid_argument("codenames: k out of range");
      }
      std::vector<size_t> order(words.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return scores[a] > scores[b]; });
      std::vector<std::string> top;
      for (int i = 0; i < k; ++i) top.push_back(words[order[i]]);
      std::sort(top.begin(), top.end());  // references are alphabetized
      result.chosen_list = top;
      std::string joined;
      for (size_t i = 0; i < top.size(); ++i) joined += (i ? ", " : "") + top[i];
      result.chosen = joined;
      result.per_choice = sum::posterior_normalize(scores, words);
      result.per_choice_logprobs = scores;
    } else {
      detail::finish_choice_result(result, words, scores, true);
    }
    result.trace = context.take_trace();
    return result;
  }

  if (mode == RelatednessMode::kMinorityVote || mode == RelatednessMode::kLvm) {
    // Think: mine difference statements between the first two words.
    think::PromptRecipe recipe{think::RecipeKind::kListDifferences,
                               {{"a", words[0]}, {"b", words[1]}},
                               context.config().n_differences};
    if (context.prompts().has("list_differences_demo")) {
      recipe.text["demonstration"] = context.prompts().get("list_differences_demo");
    }
    GenerationParams params;
    params.temperature = context.config().temperature;
    params.max_tokens = context.config().fact_max_tokens;
    think::ParsedSet statements =
        think::parse_list_output(context.generate(think::build_prompt(recipe), params));
    std::vector<think::SlotTemplate> templates =
        think::postprocess_knowledge(statements, words);

    if (templates.size() < 2) {
      result.used_fallback = true;
      result.warnings.push_back("think produced <2 usable statements: using list-of-words");
      mode = RelatednessMode::kListOfWords;
    } else {
      // Substitution matrix: statements x items, P = log p(s<w>).
      std::vector<ScoredQuery> queries;
      std::vector<std::string> statement_labels;
      for (const auto& tmpl : templates) {
        statement_labels.push_back(tmpl.raw);
        for (const auto& w : words) {
          queries.push_back({"", think::render_template(tmpl, {{"w", w}}, true)});
        }
      }
      std::vector<double> scores = context.score_batch(queries);
      sum::ScoreMatrix matrix(statement_labels, words);
      matrix.values = std::move(scores);

      if (mode == RelatednessMode::kMinorityVote) {
        const std::string odd = sum::minority_vote(matrix);
        result.chosen = odd;
        // Report vote shares as the per-choice distribution.
        std::vector<double> votes(words.size(), 0.0);
        for (size_t s = 0; s < matrix.rows(); ++s) {
          auto row = matrix.row(s);
          votes[detail::argmin_lowest(std::vector<double>(row.begin(), row.end()))] += 1.0;
        }
        std::vector<double> log_votes(words.size());
        for (size_t i = 0; i < votes.size(); ++i) {
          log_votes[i] = votes[i] > 0 ? std::log(votes[i]) : kNegInf;
        }
        result.per_choice = sum::posterior_normalize(log_votes, words);
        result.per_choice_logprobs = log_votes;
      } else {
        sum::LatentClassModel model =
            sum::em_fit(matrix.transposed(), context.config().em_classes,
                        context.config().em_iterations, context.config().seed);
        if (model.degenerate) result.warnings.push_back("latent classes are degenerate");
        std::vector<double> odd_scores(words.size());
        for (size_t i = 0; i < words.size(); ++i) {
          std::vector<std::string> others;
          for (size_t j = 0; j < words.size(); ++j) {
            if (j != i) others.push_back(words[j]);
          }
          odd_scores[i] = sum::lvm_odd_score(model, words[i], others);
        }
        std::vector<double> log_scores(words.size());
        for (size_t i = 0; i < words.size(); ++i) {
          log_scores[i] = odd_scores[i] > 0 ? std::log(odd_scores[i]) : kNegInf;
        }
        detail::finish_choice_result(result, words, log_scores, true);
      }
      result.trace = context.take_trace();
      return result;
    }
  }

  // list-of-words: pairwise matrix over the words themselves.
  std::vector<ScoredQuery> queries;
  for (const auto& wi : words) {
    think::PromptRecipe recipe{think::RecipeKind::kListOfWordsPrefix, {{"word", wi}}, 0};
    const std::string prefix = think::build_prompt(recipe);
    for (const auto& wj : words) {
      if (wj == wi) continue;
      queries.push_back({prefix, wj});
    }
  }
  std::vector<double> scores = context.score_batch(queries);
  std::vector<double> row_products(words.size(), 0.0);
  size_t q = 0;
  for (size_t i = 0; i < words.size(); ++i) {
    std::vector<double> row;
    for (size_t j = 0; j < words.size(); ++j) {
      if (j == i) continue;
      row.push_back(scores[q++]);
    }
    row_products[i] = sum::product_aggregate(row);
  }
  detail::finish_choice_result(result, words, row_products, false);  // least likely row
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Substitution + aggregation family
// ---------------------------------------------------------------------------

enum class SubstitutionKind { kInventedWords, kNovelConcepts };

/**
 * Invented words (metadata: words[2], definitions[2]): generate N_e examples
 * per definition, substitute every example pair into each candidate
 * statement, mixture-aggregate, and divide by the unsubstituted statement's
 * own likelihood. Novel concepts (metadata: words): substitute each word for
 * "They all" in each candidate statement, take likelihood ratios to the
 * template, and product-aggregate across words.
 */
inline PipelineResult solve_substitution_mixture(PipelineContext& context,
                                                 const TaskInstance& instance,
                                                 SubstitutionKind kind) {
  PipelineResult result;
  const auto& statements = instance.choices;
  if (statements.empty()) {
    throw std::invalid_argument("substitution: need candidate statements");
  }

  if (kind == SubstitutionKind::kInventedWords) {
    const auto nonce_words = instance.metadata_list("words");
    const auto definitions = instance.metadata_list("definitions");
    if (nonce_words.size() != 2 || definitions.size() != 2) {
      throw std::invalid_argument("invented-words: need exactly 2 words and 2 definitions");
    }

    // Think: N_e examples per nonce word, from its definition.
    GenerationParams params;
    params.temperature = context.config().temperature;
    params.max_tokens = context.config().max_tokens;
    std::vector<std::vector<std::string>> example_sets(2);
    for (size_t w = 0; w < 2; ++w) {
      think::PromptRecipe recipe{think::RecipeKind::kExampleGeneration,
                                 {{"definition", definitions[w]}},
                                 context.config().n_examples};
      think::ParsedSet parsed =
          think::parse_list_output(context.generate(think::build_prompt(recipe), params));
      auto& set = example_sets[w];
      for (const auto& item : parsed.items) {
        if (static_cast<int>(set.size()) >= context.config().n_examples) break;
        set.push_back(item);
      }
      if (set.empty()) {
        result.warnings.push_back("no examples generated for '" + nonce_words[w] +
                                  "': using the word itself");
        set.push_back(nonce_words[w]);
      }
    }

    // Sum: mixture over substitution pairs, as a ratio to the template.
    std::vector<double> log_ratios(statements.size());
    for (size_t s = 0; s < statements.size(); ++s) {
      think::SlotTemplate tmpl = detail::nonce_template(statements[s], nonce_words);
      std::vector<ScoredQuery> queries;
      for (const auto& e1 : example_sets[0]) {
        for (const auto& e2 : example_sets[1]) {
          const std::string text =
              think::render_template(tmpl, detail::nonce_bindings({e1, e2}), true);
          queries.push_back({"", text});
        }
      }
      queries.push_back({"", statements[s]});  // unsubstituted template
      std::vector<double> scores = context.score_batch(queries);
      const double log_template = scores.back();
      scores.pop_back();
      log_ratios[s] = std::log(sum::mixture_aggregate(scores)) - log_template;
    }
    detail::finish_choice_result(result, statements, log_ratios, true);
    result.trace = context.take_trace();
    return result;
  }

  // Novel concepts.
  const auto words = instance.metadata_list("words");
  if (words.empty()) throw std::invalid_argument("novel-concepts: need a word set");
  std::vector<double> log_products(statements.size(), 0.0);
  for (size_t s = 0; s < statements.size(); ++s) {
    const std::string& statement = statements[s];
    size_t at = statement.find("They all");
    if (at == std::string::npos) at = statement.find("they all");
    if (at == std::string::npos) {
      throw std::invalid_argument("novel-concepts: statement lacks a 'They all' subject: " +
                                  statement);
    }
    think::SlotTemplate tmpl(statement.substr(0, at) + "{{w}}" +
                             statement.substr(at + std::string("They all").size()));
    std::vector<ScoredQuery> queries;
    for (const auto& w : words) {
      queries.push_back({"", think::render_template(tmpl, {{"w", w}}, true)});
    }
    queries.push_back({"", statement});
    std::vector<double> scores = context.score_batch(queries);
    const double log_template = scores.back();
    scores.pop_back();
    for (double v : scores) log_products[s] += v - log_template;
  }
  detail::finish_choice_result(result, statements, log_products, true);
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Posterior + threshold family
// ---------------------------------------------------------------------------

enum class ThresholdKind { kSports, kKnownUnknowns };

/**
 * Sports understanding (metadata: subject, action; choices: plausible /
 * implausible): generate N_e players who perform the action, normalize the
 * statement likelihoods over generated players plus the subject, and reject
 * as implausible when the subject's posterior falls below the threshold.
 * Known unknowns (metadata: question; choices: answer / Unknown): generate
 * N_e other answers and accept the given answer only when its posterior
 * leads the runner-up by at least 1/N_e.
 */
inline PipelineResult solve_posterior_threshold(PipelineContext& context,
                                                const TaskInstance& instance,
                                                ThresholdKind kind) {
  PipelineResult result;
  GenerationParams params;
  params.temperature = context.config().diversity_temperature;
  params.max_tokens = context.config().max_tokens;
  const int n_e = context.config().n_alternatives;

  if (kind == ThresholdKind::kSports) {
    const std::string subject = instance.metadata_string("subject");
    const std::string action = instance.metadata_string("action");
    think::PromptRecipe recipe{
        think::RecipeKind::kExampleGeneration,
        {{"request", "List " + std::to_string(n_e) + " examples of players who " + action}},
        n_e};
    if (context.prompts().has("sports_examples_demo")) {
      recipe.text["demonstration"] = context.prompts().get("sports_examples_demo");
    }
    think::ParsedSet parsed =
        think::parse_list_output(context.generate(think::build_prompt(recipe), params));
    std::vector<std::string> players;
    for (const auto& p : parsed.items) {
      if (static_cast<int>(players.size()) >= n_e) break;
      if (detail::lower(p) == detail::lower(subject)) continue;
      players.push_back(p);
    }
    if (players.size() < 2) {
      return detail::direct_fallback(context, instance, std::move(result),
                                     "generated <2 usable players");
    }

    std::vector<std::string> labels = {subject};
    labels.insert(labels.end(), players.begin(), players.end());
    std::vector<ScoredQuery> queries;
    for (const auto& y : labels) queries.push_back({"", y + " " + action});
    sum::PosteriorVector posterior =
        sum::posterior_normalize(context.score_batch(queries), labels);

    const auto decision = sum::threshold_decide(posterior, subject,
                                                context.config().sports_threshold,
                                                sum::ThresholdMode::kBelowReject);
    const bool implausible = decision == sum::ThresholdDecision::kImplausible;
    result.chosen = detail::choice_like(instance, implausible ? "implausible" : "plausible");
    result.per_choice = posterior;
    result.trace = context.take_trace();
    return result;
  }

  // Known unknowns.
  const std::string question = detail::metadata_or_input(instance, "question");
  std::string answer;
  std::string unknown_choice = "Unknown";
  for (const auto& choice : instance.choices) {
    if (detail::lower(choice) == "unknown") {
      unknown_choice = choice;
    } else {
      answer = choice;
    }
  }
  if (answer.empty()) {
    throw std::invalid_argument("known-unknowns: no precise answer among choices");
  }

  think::PromptRecipe recipe{think::RecipeKind::kListExtension,
                             {{"question", question}, {"answer", answer}},
                             n_e};
  think::ParsedSet parsed =
      think::parse_list_output(context.generate(think::build_prompt(recipe), params));
  std::vector<std::string> alternatives;
  for (const auto& a : parsed.items) {
    if (static_cast<int>(alternatives.size()) >= n_e) break;
    if (detail::lower(a) == detail::lower(answer)) continue;
    alternatives.push_back(a);
  }
  if (alternatives.size() < 2) {
    return detail::direct_fallback(context, instance, std::move(result),
                                   "generated <2 usable answers");
  }

  std::string base = question;
  while (!base.empty() &&
         (base.back() == '?' || std::isspace(static_cast<unsigned char>(base.back())))) {
    base.pop_back();
  }
  std::vector<std::string> labels = {answer};
  labels.insert(labels.end(), alternatives.begin(), alternatives.end());
  std::vector<ScoredQuery> queries;
  for (const auto& y : labels) queries.push_back({"", base + "? " + y});
  sum::PosteriorVector posterior =
      sum::posterior_normalize(context.score_batch(queries), labels);

  const auto decision =
      sum::threshold_decide(posterior, answer, context.config().known_unknown_margin(),
                            sum::ThresholdMode::kMargin);
  result.chosen = decision == sum::ThresholdDecision::kKnown ? answer : unknown_choice;
  result.per_choice = posterior;
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// True/false statement pairs
// ---------------------------------------------------------------------------

/**
 * Misconceptions (choices: statement s and its negation t): compare the two
 * hypotheses "s true, t false" and "s false, t true" by multiplying the
 * True/False continuation probabilities of each statement. With
 * `translations` > 0, that many working-language translations are generated
 * per statement (metadata: source_language, default Russian) and the
 * hypothesis products are mixture-aggregated over translation pairs; the
 * pair mixture factorizes, so each side is aggregated independently.
 */
inline PipelineResult solve_truth_posterior(PipelineContext& context,
                                            const TaskInstance& instance, int translations) {
  PipelineResult result;
  if (instance.choices.size() != 2) {
    throw std::invalid_argument("misconceptions: need exactly 2 statements");
  }

  auto variants_of = [&](const std::string& statement) {
    std::vector<std::string> variants;
    if (translations <= 0) {
      variants.push_back(statement);
      return variants;
    }
    const std::string source = instance.has_metadata("source_language")
                                   ? instance.metadata_string("source_language")
                                   : "Russian";
    think::PromptRecipe recipe{think::RecipeKind::kTranslation,
                               {{"source_label", source},
                                {"source_text", statement},
                                {"target_label", "English"}},
                               0};
    GenerationParams params;
    params.temperature = context.config().diversity_temperature;
    params.max_tokens = context.config().max_tokens;
    params.stop = {"\n"};
    const std::string prompt = think::build_prompt(recipe);
    for (int i = 0; i < translations; ++i) {
      std::string t = detail::trim(context.generate(prompt, params));
      if (!t.empty()) variants.push_back(t);
    }
    if (variants.empty()) {
      result.warnings.push_back("translation produced nothing: scoring statements as-is");
      variants.push_back(statement);
    }
    return variants;
  };

  auto hypothesis_scores = [&](const std::vector<std::string>& variants) {
    std::vector<ScoredQuery> queries;
    for (const auto& v : variants) {
      const std::string prompt = "True or False? " + think::detail::ensure_period(v) + " Answer:";
      queries.push_back({prompt, " True"});
      queries.push_back({prompt, " False"});
    }
    std::vector<double> scores = context.score_batch(queries);
    std::vector<double> log_true, log_false;
    for (size_t i = 0; i < scores.size(); i += 2) {
      log_true.push_back(scores[i]);
      log_false.push_back(scores[i + 1]);
    }
    return std::make_pair(log_mean_exp(log_true), log_mean_exp(log_false));
  };

  auto [s_true, s_false] = hypothesis_scores(variants_of(instance.choices[0]));
  auto [t_true, t_false] = hypothesis_scores(variants_of(instance.choices[1]));

  const std::vector<double> hypotheses = {s_true + t_false, s_false + t_true};
  detail::finish_choice_result(result, instance.choices, hypotheses, true);
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Order inversion family
// ---------------------------------------------------------------------------

enum class InversionKind { kEmojiMovie, kLanguageId, kCodeLine };

/**
 * Score the stimulus conditioned on a prompt naming each candidate, and take
 * the argmax. Emoji movie (metadata: stimulus) optionally translates each
 * pictographic cluster to a word first; language identification (metadata:
 * sentence) uses the fixed sentence prefix; code-line (metadata: code)
 * scores the snippet re-indented at widths 1..6 after each candidate as a
 * comment, product-aggregated over widths.
 */
inline PipelineResult solve_order_inversion_choice(PipelineContext& context,
                                                   const TaskInstance& instance,
                                                   InversionKind kind) {
  PipelineResult result;
  const auto& candidates = instance.choices;
  if (candidates.empty()) throw std::invalid_argument("order-inversion: need candidates");

  std::string variant;
  std::string stimulus;
  switch (kind) {
    case InversionKind::kEmojiMovie:
      variant = "emoji-movie";
      stimulus = detail::metadata_or_input(instance, "stimulus");
      break;
    case InversionKind::kLanguageId:
      variant = "language-id";
      stimulus = detail::metadata_or_input(instance, "sentence");
      break;
    case InversionKind::kCodeLine:
      variant = "code-line";
      stimulus = detail::metadata_or_input(instance, "code");
      break;
  }

  if (kind == InversionKind::kEmojiMovie && context.config().emoji_translation) {
    std::vector<std::string> emoji = think::extract_emoji(stimulus);
    std::vector<std::string> translated;
    GenerationParams params;
    params.temperature = context.config().temperature;
    params.max_tokens = context.config().max_tokens;
    params.stop = {"\n"};
    for (const auto& e : emoji) {
      think::PromptRecipe recipe{
          think::RecipeKind::kTranslation,
          {{"source_label", "Emoji"}, {"source_text", e}, {"target_label", "Word"}},
          0};
      std::string word = detail::trim(context.generate(think::build_prompt(recipe), params));
      if (word.empty()) {
        translated.clear();
        break;
      }
      translated.push_back(word);
    }
    if (emoji.empty() || translated.size() != emoji.size()) {
      result.used_fallback = true;
      result.warnings.push_back("emoji translation failed: scoring raw emoji");
    } else {
      variant = "words-movie";
      std::string joined;
      for (size_t i = 0; i < translated.size(); ++i) joined += (i ? " " : "") + translated[i];
      stimulus = joined;
    }
  }

  std::vector<double> log_scores(candidates.size(), 0.0);
  if (kind == InversionKind::kCodeLine) {
    std::vector<ScoredQuery> queries;
    for (const auto& candidate : candidates) {
      think::PromptRecipe recipe{think::RecipeKind::kOrderInversion,
                                 {{"variant", variant}, {"candidate", candidate}},
                                 0};
      const std::string prompt = think::build_prompt(recipe);
      for (int width = 1; width <= 6; ++width) {
        queries.push_back({prompt, think::reindent_code(stimulus, width)});
      }
    }
    std::vector<double> scores = context.score_batch(queries);
    for (size_t c = 0; c < candidates.size(); ++c) {
      std::vector<double> widths(scores.begin() + c * 6, scores.begin() + (c + 1) * 6);
      log_scores[c] = sum::product_aggregate(widths);
    }
  } else {
    std::vector<ScoredQuery> queries;
    for (const auto& candidate : candidates) {
      think::PromptRecipe recipe{think::RecipeKind::kOrderInversion,
                                 {{"variant", variant}, {"candidate", candidate}},
                                 0};
      queries.push_back({think::build_prompt(recipe), stimulus});
    }
    log_scores = context.score_batch(queries);
    for (size_t c = 0; c < candidates.size(); ++c) {
      log_scores[c] = detail::maybe_length_normalize(log_scores[c], stimulus, context.config());
    }
  }
  detail::finish_choice_result(result, candidates, log_scores, true);
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Logical deduction
// ---------------------------------------------------------------------------

inline constexpr double kLowConfidenceMargin = 0.05;  // above-uniform lead to trust a winner

/**
 * Logical deduction (metadata: objects; optional choice_constraints giving
 * each choice's translated comparison). Think: the demonstration-led
 * translation prompt turns the problem into comparison lines; candidates
 * are translated the same way unless provided. Sum: marginalize assignments
 * per Eq.-style product of comparison probabilities and normalize.
 */
inline PipelineResult solve_logical_deduction(PipelineContext& context,
                                              const TaskInstance& instance) {
  PipelineResult result;
  const auto objects = instance.metadata_list("objects");
  const int n = static_cast<int>(objects.size());
  if (instance.choices.empty()) throw std::invalid_argument("deduction: need candidates");

  GenerationParams params;
  params.temperature = context.config().temperature;
  params.max_tokens = context.config().max_tokens;
  params.stop = {"\n\n"};
  const std::string demo = context.prompts().get("deduction_translation_demo");

  auto translate = [&](const std::string& question) {
    think::PromptRecipe recipe{think::RecipeKind::kTranslation,
                               {{"demonstration", demo}, {"question", question}},
                               0};
    return context.generate(think::build_prompt(recipe), params);
  };

  think::ConstraintParse parse =
      think::parse_constraints(translate(instance.input), objects, n);
  for (const auto& w : parse.warnings) {
    result.warnings.push_back("unparsed constraint line: " + w);
  }
  if (parse.failed()) {
    return detail::direct_fallback(context, instance, std::move(result),
                                   "constraint translation failed");
  }

  std::vector<think::Comparison> candidates;
  if (instance.has_metadata("choice_constraints")) {
    for (const auto& line : instance.metadata_list("choice_constraints")) {
      think::ConstraintParse one = think::parse_constraints(line, objects, n);
      if (one.failed()) {
        return detail::direct_fallback(context, instance, std::move(result),
                                       "candidate constraint unparseable");
      }
      candidates.push_back(one.set.constraints[0]);
    }
  } else {
    for (const auto& choice : instance.choices) {
      think::ConstraintParse one = think::parse_constraints(translate(choice), objects, n);
      if (one.failed()) {
        return detail::direct_fallback(context, instance, std::move(result),
                                       "candidate translation failed");
      }
      candidates.push_back(one.set.constraints[0]);
    }
  }
  if (candidates.size() != instance.choices.size()) {
    throw std::invalid_argument("deduction: candidate/choice count mismatch");
  }

  sum::PosteriorVector posterior;
  if (context.config().deduction_backend_evaluator) {
    ContextScoringBackend scoring(context);
    sum::BackendEvaluator evaluator(scoring);
    posterior = sum::deduction_candidate_posterior(parse.set, candidates, evaluator,
                                                   context.config().deduction,
                                                   &result.warnings);
  } else {
    sum::ExternalEvaluator evaluator(context.config().p_true, context.config().p_false);
    posterior = sum::deduction_candidate_posterior(parse.set, candidates, evaluator,
                                                   context.config().deduction,
                                                   &result.warnings);
  }

  bool tie = false;
  size_t best = detail::argmax_lowest(posterior.probabilities, &tie);
  result.tie = tie;
  if (tie) result.warnings.push_back("tie: equal posteriors resolved to lowest index");
  const double uniform = 1.0 / static_cast<double>(posterior.probabilities.size());
  if (posterior.probabilities[best] - uniform < kLowConfidenceMargin) {
    result.warnings.push_back("low confidence: posterior is near uniform");
  }
  result.chosen = instance.choices[best];
  result.per_choice = sum::PosteriorVector{instance.choices, posterior.probabilities};
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Translation QA
// ---------------------------------------------------------------------------

/**
 * Extractive QA in a low-resource language (metadata: passage, question,
 * source_language, target_language): translate both into the working
 * language, generate an answer up to the first period or line break, and
 * translate it back. Scored by exact match against the target.
 */
inline PipelineResult solve_translation_qa(PipelineContext& context,
                                           const TaskInstance& instance) {
  PipelineResult result;
  const std::string passage = detail::metadata_or_input(instance, "passage");
  const std::string question = instance.metadata_string("question");
  const std::string source = instance.has_metadata("source_language")
                                 ? instance.metadata_string("source_language")
                                 : "Persian";
  const std::string target = instance.has_metadata("target_language")
                                 ? instance.metadata_string("target_language")
                                 : "English";

  GenerationParams params;
  params.temperature = context.config().diversity_temperature;
  params.max_tokens = context.config().max_tokens;
  params.stop = {"\n"};

  auto translate = [&](const std::string& text, const std::string& from,
                       const std::string& to) {
    think::PromptRecipe recipe{
        think::RecipeKind::kTranslation,
        {{"source_label", from}, {"source_text", text}, {"target_label", to}},
        0};
    return detail::trim(context.generate(think::build_prompt(recipe), params));
  };

  const std::string passage_t = translate(passage, source, target);
  const std::string question_t = translate(question, source, target);
  if (passage_t.empty() || question_t.empty()) {
    result.warnings.push_back("translation failed: empty answer");
    result.trace = context.take_trace();
    return result;
  }

  GenerationParams answer_params;
  answer_params.temperature = context.config().temperature;
  answer_params.max_tokens = context.config().max_tokens;
  const std::string raw_answer =
      context.generate(passage_t + "\n" + question_t + "\n", answer_params);
  const std::string answer_t = detail::first_clause(raw_answer);
  if (answer_t.empty()) {
    result.warnings.push_back("answer generation failed: empty answer");
    result.trace = context.take_trace();
    return result;
  }

  result.chosen = detail::first_clause(translate(answer_t, target, source));
  if (result.chosen.empty()) result.warnings.push_back("back-translation failed: empty answer");
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

enum class BaselineKind { kDirect, kAuxiliaryKnowledge, kChainOfThought };

/**
 * direct: normalize choice likelihoods after the input. auxiliary-knowledge
 * (metadata: words): mine difference statements, keep the post-processed
 * sentences, and prepend them to the input before direct scoring.
 * chain-of-thought (metadata: cot_demo naming a prompts/ file): prepend the
 * demonstration, generate a rationale, then score each choice after
 * "Answer:".
 */
inline PipelineResult solve_baseline(PipelineContext& context, const TaskInstance& instance,
                                     BaselineKind kind) {
  PipelineResult result;
  if (instance.choices.empty()) throw std::invalid_argument("baseline: need choices");

  if (kind == BaselineKind::kDirect) {
    detail::finish_choice_result(result, instance.choices,
                                 detail::direct_choice_scores(context, instance), true);
    result.trace = context.take_trace();
    return result;
  }

  if (kind == BaselineKind::kAuxiliaryKnowledge) {
    const auto words = instance.metadata_list("words");
    if (words.size() < 2) {
      throw std::invalid_argument("auxiliary-knowledge: need at least 2 words");
    }
    think::PromptRecipe recipe{think::RecipeKind::kListDifferences,
                               {{"a", words[0]}, {"b", words[1]}},
                               context.config().n_differences};
    if (context.prompts().has("list_differences_demo")) {
      recipe.text["demonstration"] = context.prompts().get("list_differences_demo");
    }
    GenerationParams params;
    params.temperature = context.config().temperature;
    params.max_tokens = context.config().fact_max_tokens;
    think::ParsedSet statements =
        think::parse_list_output(context.generate(think::build_prompt(recipe), params));
    auto kept = think::filter_knowledge(statements.items, words);
    if (kept.empty()) {
      return detail::direct_fallback(context, instance, std::move(result),
                                     "no usable knowledge statements");
    }
    std::string facts;
    for (size_t i = 0; i < kept.size(); ++i) facts += (i ? "\n" : "") + kept[i].text;
    think::PromptRecipe aux{think::RecipeKind::kAuxiliaryKnowledge,
                            {{"facts", facts}, {"question", instance.input}},
                            0};
    detail::finish_choice_result(
        result, instance.choices,
        detail::direct_choice_scores(context, instance, think::build_prompt(aux)), true);
    result.trace = context.take_trace();
    return result;
  }

  // Chain of thought.
  const std::string demo = context.prompts().get(instance.metadata_string("cot_demo"));
  think::PromptRecipe recipe{think::RecipeKind::kChainOfThought,
                             {{"demonstration", demo}, {"question", instance.input}},
                             0};
  const std::string prompt = think::build_prompt(recipe);
  GenerationParams params;
  params.temperature = context.config().temperature;
  params.max_tokens = context.config().max_tokens;
  params.stop = {"Answer:"};
  std::string rationale = context.generate(prompt, params);
  if (detail::trim(rationale).empty()) {
    result.warnings.push_back("empty rationale: scoring choices without one");
    rationale.clear();
  }
  std::string scored_prompt = prompt + rationale;
  if (!scored_prompt.empty() && scored_prompt.back() != '\n') scored_prompt += "\n";
  scored_prompt += "Answer:";
  std::vector<ScoredQuery> queries;
  for (const auto& choice : instance.choices) queries.push_back({scored_prompt, " " + choice});
  detail::finish_choice_result(result, instance.choices, context.score_batch(queries), true);
  result.trace = context.take_trace();
  return result;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline PipelineResult solve_instance(PipelineContext& context, const TaskInstance& instance,
                                     PipelineKind kind) {
  switch (kind) {
    case PipelineKind::kOddOneOut:
      return solve_relatedness(context, instance, RelatednessMode::kListOfWords);
    case PipelineKind::kOddOneOutMinorityVote:
      return solve_relatedness(context, instance, RelatednessMode::kMinorityVote);
    case PipelineKind::kOddOneOutLvm:
      return solve_relatedness(context, instance, RelatednessMode::kLvm);
    case PipelineKind::kPhraseRelatedness:
      return solve_relatedness(context, instance, RelatednessMode::kListOfWords);
    case PipelineKind::kCodenames:
      return solve_relatedness(context, instance, RelatednessMode::kTopK);
    case PipelineKind::kInventedWords:
      return solve_substitution_mixture(context, instance, SubstitutionKind::kInventedWords);
    case PipelineKind::kNovelConcepts:
      return solve_substitution_mixture(context, instance, SubstitutionKind::kNovelConcepts);
    case PipelineKind::kSports:
      return solve_posterior_threshold(context, instance, ThresholdKind::kSports);
    case PipelineKind::kKnownUnknowns:
      return solve_posterior_threshold(context, instance, ThresholdKind::kKnownUnknowns);
    case PipelineKind::kMisconceptions:
      return solve_truth_posterior(context, instance, context.config().n_translations);
    case PipelineKind::kEmojiMovie:
      return solve_order_inversion_choice(context, instance, InversionKind::kEmojiMovie);
    case PipelineKind::kLanguageId:
      return solve_order_inversion_choice(context, instance, InversionKind::kLanguageId);
    case PipelineKind::kCodeLine:
      return solve_order_inversion_choice(context, instance, InversionKind::kCodeLine);
    case PipelineKind::kLogicalDeduction:
      return solve_logical_deduction(context, instance);
    case PipelineKind::kTranslationQa:
      return solve_translation_qa(context, instance);
    case PipelineKind::kDirect:
      return solve_baseline(context, instance, BaselineKind::kDirect);
    case PipelineKind::kAuxiliaryKnowledge:
      return solve_baseline(context, instance, BaselineKind::kAuxiliaryKnowledge);
    case PipelineKind::kChainOfThought:
      return solve_baseline(context, instance, BaselineKind::kChainOfThought);
  }
  throw std::invalid_argument("solve_instance: unsupported pipeline kind");
}

}  // namespace thinksum::tasks
