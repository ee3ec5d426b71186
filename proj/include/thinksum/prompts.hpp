#pragma once

/**
 * Prompt recipes: every string handed to a backend is built here, from a
 * recipe kind plus kind-specific parameters, so formats live in one place
 * and golden tests can pin them byte for byte. Demonstration texts are data
 * files loaded through PromptLibrary, not literals in code.
 */

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/parsing.hpp"

namespace thinksum::think {

enum class RecipeKind {
  kExampleGeneration,
  kListExtension,
  kListOfWordsPrefix,
  kFactGeneration,
  kListDifferences,
  kTranslation,
  kOrderInversion,
  kPremiseErasure,
  kAuxiliaryKnowledge,
  kChainOfThought,
};

inline const char* recipe_kind_name(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::kExampleGeneration: return "example-generation";
    case RecipeKind::kListExtension: return "list-extension";
    case RecipeKind::kListOfWordsPrefix: return "list-of-words-prefix";
    case RecipeKind::kFactGeneration: return "fact-generation";
    case RecipeKind::kListDifferences: return "list-differences";
    case RecipeKind::kTranslation: return "translation";
    case RecipeKind::kOrderInversion: return "order-inversion";
    case RecipeKind::kPremiseErasure: return "premise-erasure";
    case RecipeKind::kAuxiliaryKnowledge: return "auxiliary-knowledge";
    case RecipeKind::kChainOfThought: return "chain-of-thought";
  }
  return "?";
}

struct PromptRecipe {
  RecipeKind kind;
  std::map<std::string, std::string> text;  // kind-specific fields
  int count = 0;                            // N_e / N_d where the kind uses one
};

namespace detail {

inline std::string require_field(const PromptRecipe& recipe, const std::string& field) {
  auto it = recipe.text.find(field);
  if (it == recipe.text.end()) {
    throw std::invalid_argument(std::string(recipe_kind_name(recipe.kind)) +
                                " recipe missing field '" + field + "'");
  }
  return it->second;
}

inline bool has_field(const PromptRecipe& recipe, const std::string& field) {
  return recipe.text.count(field) > 0;
}

inline std::string ensure_period(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty() || (s.back() != '.' && s.back() != '?' && s.back() != '!')) s.push_back('.');
  return s;
}

inline std::string ensure_question_mark(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s.empty() || s.back() != '?') s.push_back('?');
  return s;
}

}  // namespace detail

/**
 * Deterministic prompt text for a recipe. Formats:
 *
 *   example-generation    "<definition>. Examples: 1."
 *                         or "<demonstration>\n<request>.\n1."
 *   list-extension        "<question>? A possible answer is:\n1. <answer>.
 *                          List <n> other possible answers in the same format
 *                          as the first:\n2."
 *   list-of-words-prefix  "List of words: <word>, "
 *   fact-generation       "List facts about <subject>. 1."
 *   list-differences      "[<demonstration>\n]List <n> differences between
 *                          <a> and <b>.\n1."
 *   translation           "<source_label>: <source_text> <target_label>:"
 *                         or "<demonstration>\n\n<question>\n"
 *   order-inversion       variant-specific prefix for one candidate
 *   premise-erasure       question with the byte span removed
 *   auxiliary-knowledge   "<facts>\n\n<question>"
 *   chain-of-thought      "<demonstration>\n\n<question>\n"
 */
inline std::string build_prompt(const PromptRecipe& recipe) {
  using namespace detail;
  switch (recipe.kind) {
    case RecipeKind::kExampleGeneration: {
      if (has_field(recipe, "definition")) {
        return ensure_period(require_field(recipe, "definition")) + " Examples: 1.";
      }
      std::string request = ensure_period(require_field(recipe, "request"));
      std::string out;
      if (has_field(recipe, "demonstration")) {
        out = require_field(recipe, "demonstration") + "\n";
      }
      return out + request + "\n1.";
    }
    case RecipeKind::kListExtension: {
      if (recipe.count < 1) throw std::invalid_argument("list-extension: count must be >= 1");
      return ensure_question_mark(require_field(recipe, "question")) +
             " A possible answer is:\n1. " + ensure_period(require_field(recipe, "answer")) +
             " List " + std::to_string(recipe.count) +
             " other possible answers in the same format as the first:\n2.";
    }
    case RecipeKind::kListOfWordsPrefix:
      return "List of words: " + require_field(recipe, "word") + ", ";
    case RecipeKind::kFactGeneration:
      return "List facts about " + require_field(recipe, "subject") + ". 1.";
    case RecipeKind::kListDifferences: {
      if (recipe.count < 1) throw std::invalid_argument("list-differences: count must be >= 1");
      std::string out;
      if (has_field(recipe, "demonstration")) {
        out = require_field(recipe, "demonstration") + "\n";
      }
      return out + "List " + std::to_string(recipe.count) + " differences between " +
             require_field(recipe, "a") + " and " + require_field(recipe, "b") + ".\n1.";
    }
    case RecipeKind::kTranslation: {
      if (has_field(recipe, "demonstration")) {
        return require_field(recipe, "demonstration") + "\n\n" +
               require_field(recipe, "question") + "\n";
      }
      return require_field(recipe, "source_label") + ": " +
             require_field(recipe, "source_text") + " " +
             require_field(recipe, "target_label") + ":";
    }
    case RecipeKind::kOrderInversion: {
      std::string variant = require_field(recipe, "variant");
      std::string candidate = require_field(recipe, "candidate");
      if (variant == "emoji-movie") return "Emoji describing the movie " + candidate + ": ";
      if (variant == "words-movie") return "Words describing the movie " + candidate + ": ";
      if (variant == "language-id") {
        return "The following is a sentence in " + candidate + ": ";
      }
      if (variant == "code-line") return "# " + candidate + "\n";
      throw std::invalid_argument("order-inversion: unknown variant '" + variant + "'");
    }
    case RecipeKind::kPremiseErasure: {
      std::string question = require_field(recipe, "question");
      size_t begin = std::stoul(require_field(recipe, "span_begin"));
      size_t length = std::stoul(require_field(recipe, "span_length"));
      return erase_premise(question, begin, length);
    }
    case RecipeKind::kAuxiliaryKnowledge:
      return require_field(recipe, "facts") + "\n\n" + require_field(recipe, "question");
    case RecipeKind::kChainOfThought:
      return require_field(recipe, "demonstration") + "\n\n" +
             require_field(recipe, "question") + "\n";
  }
  throw std::invalid_argument("build_prompt: unsupported recipe kind");
}

/**
 * Named demonstration texts from a prompts directory. Each name maps to
 * <dir>/<name>.txt; one trailing newline is stripped so demonstrations can
 * be spliced into prompts without a dangling blank line.
 */
class PromptLibrary {
 public:
  explicit PromptLibrary(std::string dir) : dir_(std::move(dir)) {}

  const std::string& dir() const { return dir_; }

  bool has(const std::string& name) const {
    if (cache_.count(name)) return true;
    std::ifstream in(path_of(name));
    return in.good();
  }

  std::string get(const std::string& name) const {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    std::ifstream in(path_of(name));
    if (!in) throw std::runtime_error("prompt file not readable: " + path_of(name));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();
    if (!content.empty() && content.back() == '\n') content.pop_back();
    cache_[name] = content;
    return content;
  }

 private:
  std::string path_of(const std::string& name) const { return dir_ + "/" + name + ".txt"; }

  std::string dir_;
  mutable std::map<std::string, std::string> cache_;
};

/**
 * Rewrite each line's leading indentation to `width` spaces per level. One
 * level is the smallest non-zero indent found in the snippet; tabs count as
 * one level each.
 */
inline std::string reindent_code(const std::string& code, int width) {
  if (width < 0) throw std::invalid_argument("reindent_code: negative width");
  auto lines = detail::split_on(code, '\n');

  // Leading tabs count as `unit` spaces each once the unit is known; first
  // pass finds the smallest pure-space indent.
  size_t unit = 0;
  for (const auto& line : lines) {
    size_t spaces = 0;
    while (spaces < line.size() && line[spaces] == ' ') ++spaces;
    if (spaces > 0 && spaces < line.size() && (unit == 0 || spaces < unit)) unit = spaces;
  }

  std::string out;
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    size_t i = 0;
    size_t levels = 0;
    while (i < line.size() && line[i] == '\t') {
      ++levels;
      ++i;
    }
    size_t spaces = 0;
    while (i < line.size() && line[i] == ' ') {
      ++spaces;
      ++i;
    }
    if (unit > 0) levels += spaces / unit;
    out.append(levels * static_cast<size_t>(width), ' ');
    out.append(line.substr(i));
    if (li + 1 < lines.size()) out.push_back('\n');
  }
  return out;
}

}  // namespace thinksum::think
