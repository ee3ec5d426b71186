#pragma once

/**
 * Slot templates and substitution with light syntax normalization.
 *
 * A template is plain text with named slots written {{name}}. Substituting a
 * set element for a slot can leave the sentence ungrammatical; the normalize
 * flag applies a small deterministic rule table at slot boundaries only:
 * subject-verb agreement for a handful of common verbs, a/an correction, and
 * sentence-start capitalization. Naive pluralization (s/es/ies) is exposed for
 * carrying inflection suffixes onto substituted words.
 */

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinksum::think {

struct SlotTemplate {
  std::string raw;
  std::vector<std::string> slots;  // distinct names, order of first appearance

  SlotTemplate() = default;
  explicit SlotTemplate(std::string text) : raw(std::move(text)) {
    size_t pos = 0;
    while ((pos = raw.find("{{", pos)) != std::string::npos) {
      size_t end = raw.find("}}", pos + 2);
      if (end == std::string::npos) break;
      std::string name = raw.substr(pos + 2, end - pos - 2);
      bool seen = false;
      for (const auto& s : slots) {
        if (s == name) {
          seen = true;
          break;
        }
      }
      if (!seen) slots.push_back(name);
      pos = end + 2;
    }
  }
};

/// s/es/ies pluralization.
inline std::string pluralize(const std::string& word) {
  if (word.empty()) return word;
  auto ends_with = [&](const char* suffix) {
    size_t n = std::char_traits<char>::length(suffix);
    return word.size() >= n && word.compare(word.size() - n, n, suffix) == 0;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") ||
      ends_with("sh")) {
    return word + "es";
  }
  if (word.size() >= 2 && (word.back() == 'y' || word.back() == 'Y')) {
    char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(word[word.size() - 2])));
    if (prev != 'a' && prev != 'e' && prev != 'i' && prev != 'o' && prev != 'u') {
      return word.substr(0, word.size() - 1) + "ies";
    }
  }
  return word + "s";
}

inline bool starts_with_vowel(const std::string& phrase) {
  for (char ch : phrase) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
    }
  }
  return false;
}

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : phrase) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        words.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

// Singular/plural guess for a noun phrase: a singular determiner wins,
// otherwise the last word's trailing 's' decides (double-s stays singular).
inline bool phrase_is_singular(const std::string& phrase) {
  auto words = split_words(phrase);
  if (words.empty()) return true;
  std::string first = lower(words.front());
  if (first == "a" || first == "an" || first == "one" || first == "this" ||
      first == "that") {
    return true;
  }
  std::string last = lower(words.back());
  if (last.size() >= 2 && last.back() == 's' && last[last.size() - 2] != 's') {
    return false;
  }
  return true;
}

// Verb agreement table; anything outside it is left untouched.
inline const std::map<std::string, std::string>& plural_to_singular_verbs() {
  static const std::map<std::string, std::string> table = {
      {"are", "is"}, {"were", "was"}, {"have", "has"}, {"do", "does"}};
  return table;
}

inline const std::map<std::string, std::string>& singular_to_plural_verbs() {
  static const std::map<std::string, std::string> table = {
      {"is", "are"}, {"was", "were"}, {"has", "have"}, {"does", "do"}};
  return table;
}

struct Span {
  size_t pos;
  size_t len;
};

// Word token starting at `pos` (letters only).
inline std::string word_at(const std::string& text, size_t pos) {
  std::string w;
  while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
    w.push_back(text[pos]);
    ++pos;
  }
  return w;
}

inline bool sentence_start(const std::string& text, size_t pos) {
  while (pos > 0) {
    char c = text[pos - 1];
    if (std::isspace(static_cast<unsigned char>(c))) {
      --pos;
      continue;
    }
    return c == '.' || c == '!' || c == '?';
  }
  return true;
}

// Normalization for one substituted span; edits may change the text length
// but only at or after `span.pos - preceding-article`, so callers process
// spans right to left.
inline void normalize_span(std::string& text, const Span& span) {
  const std::string phrase = text.substr(span.pos, span.len);
  const bool singular = phrase_is_singular(phrase);

  // Verb agreement just after the span.
  size_t after = span.pos + span.len;
  while (after < text.size() && text[after] == ' ') ++after;
  std::string verb = word_at(text, after);
  std::string verb_lower = lower(verb);
  const auto& to_sing = plural_to_singular_verbs();
  const auto& to_plur = singular_to_plural_verbs();
  std::string replacement;
  if (singular && to_sing.count(verb_lower)) {
    replacement = to_sing.at(verb_lower);
  } else if (!singular && to_plur.count(verb_lower)) {
    replacement = to_plur.at(verb_lower);
  }
  if (!replacement.empty()) {
    if (!verb.empty() && std::isupper(static_cast<unsigned char>(verb[0]))) {
      replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
    }
    text.replace(after, verb.size(), replacement);
  }

  // Sentence-start capitalization of the substituted phrase.
  if (sentence_start(text, span.pos)) {
    for (size_t i = span.pos; i < span.pos + span.len; ++i) {
      if (std::isalpha(static_cast<unsigned char>(text[i]))) {
        text[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
        break;
      }
    }
  }

  // a/an correction for an article immediately before the span.
  if (span.pos >= 2 && text[span.pos - 1] == ' ') {
    size_t word_end = span.pos - 1;
    size_t word_begin = word_end;
    while (word_begin > 0 &&
           std::isalpha(static_cast<unsigned char>(text[word_begin - 1]))) {
      --word_begin;
    }
    std::string article = text.substr(word_begin, word_end - word_begin);
    std::string article_lower = lower(article);
    if (article_lower == "a" || article_lower == "an") {
      std::string fixed = starts_with_vowel(phrase) ? "an" : "a";
      if (std::isupper(static_cast<unsigned char>(article[0]))) {
        fixed[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(fixed[0])));
      }
      text.replace(word_begin, article.size(), fixed);
    }
  }
}

}  // namespace detail

/**
 * Substitute bindings into the template. Every slot must be bound; binding
 * names that match no slot are ignored. With normalize set, the agreement
 * rule table is applied around each substituted span; with it off, no
 * character outside the slot positions changes.
 */
inline std::string render_template(const SlotTemplate& tmpl,
                                   const std::map<std::string, std::string>& bindings,
                                   bool normalize = false) {
  for (const auto& slot : tmpl.slots) {
    if (!bindings.count(slot)) {
      throw std::invalid_argument("render_template: missing binding for slot '" + slot + "'");
    }
  }

  std::string out;
  std::vector<detail::Span> spans;
  size_t pos = 0;
  while (pos < tmpl.raw.size()) {
    size_t open = tmpl.raw.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl.raw, pos, std::string::npos);
      break;
    }
    size_t close = tmpl.raw.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(tmpl.raw, pos, std::string::npos);
      break;
    }
    out.append(tmpl.raw, pos, open - pos);
    const std::string name = tmpl.raw.substr(open + 2, close - open - 2);
    const std::string& value = bindings.at(name);
    spans.push_back({out.size(), value.size()});
    out += value;
    pos = close + 2;
  }

  if (normalize) {
    for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
      detail::normalize_span(out, *it);
    }
  }
  return out;
}

}  // namespace thinksum::think
