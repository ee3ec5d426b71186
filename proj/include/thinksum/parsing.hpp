#pragma once

/**
 * Parsing of generated completions into sets, knowledge post-processing, and
 * premise erasure.
 *
 * parse_list_output handles the two list formats generations come back in:
 * numbered lines ("2. cabin") and single-line comma lists ("cat, mink, dog").
 * The comma rule applies only when the whole text is one line without
 * enumeration markers, so sentences with internal commas survive intact.
 */

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/slot_template.hpp"

namespace thinksum::think {

/// Ordered set of distinct trimmed strings parsed from a generation.
struct ParsedSet {
  std::vector<std::string> items;
  std::string source;

  bool empty() const { return items.empty(); }
  size_t size() const { return items.size(); }

  bool operator==(const ParsedSet& other) const { return items == other.items; }
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Drop a "1." / "23)" marker at the start of a segment. A marker with
// nothing after it strips to empty, which the callers then discard.
inline std::string strip_leading_enumeration(const std::string& s) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  size_t d = i;
  while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
  if (d > i && d < s.size() && (s[d] == '.' || s[d] == ')')) {
    return trim_copy(s.substr(d + 1));
  }
  return trim_copy(s);
}

// Split a line on inline " 2. " style markers. Returns at least one piece.
inline std::vector<std::string> split_inline_markers(const std::string& line) {
  std::vector<std::string> pieces;
  size_t start = 0;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      size_t d = i + 1;
      while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
      if (d > i + 1 && d < line.size() && (line[d] == '.' || line[d] == ')') &&
          d + 1 < line.size() &&
          std::isspace(static_cast<unsigned char>(line[d + 1]))) {
        pieces.push_back(line.substr(start, i - start));
        start = i + 1;
        i = d + 2;
        continue;
      }
    }
    ++i;
  }
  pieces.push_back(line.substr(start));
  return pieces;
}

inline std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

inline std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

inline size_t word_count(const std::string& s) {
  size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace detail

/**
 * Parse a generated completion into an ordered set: split on newlines and
 * numbered markers, strip enumeration digits and surrounding whitespace,
 * drop empties, keep the first occurrence of duplicates. An empty result is
 * valid and tells the caller the generation step failed.
 */
inline ParsedSet parse_list_output(const std::string& text) {
  ParsedSet out;
  out.source = text;

  std::vector<std::string> segments;
  auto lines = detail::split_on(text, '\n');
  for (const auto& line : lines) {
    for (auto& piece : detail::split_inline_markers(line)) {
      segments.push_back(piece);
    }
  }

  // Single unnumbered line: treat commas as the list delimiter.
  if (segments.size() == 1) {
    std::string only = detail::trim_copy(segments[0]);
    if (only.find(',') != std::string::npos) {
      segments = detail::split_on(only, ',');
    }
  }

  for (const auto& segment : segments) {
    std::string item = detail::strip_leading_enumeration(segment);
    if (item.empty()) continue;
    bool duplicate = false;
    for (const auto& existing : out.items) {
      if (existing == item) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.items.push_back(item);
  }
  return out;
}

/// Inverse of parse_list_output for well-formed sets: "1. a\n2. b\n...".
inline std::string enumerate_list(const std::vector<std::string>& items, int start = 1) {
  std::string out;
  int n = start;
  for (const auto& item : items) {
    out += std::to_string(n++) + ". " + item + "\n";
  }
  return out;
}

/// A knowledge statement that survived filtering, with the single object it
/// mentions and the template produced by slotting that object out.
struct KnowledgeSentence {
  std::string text;     // cleaned sentence, object words intact
  std::string object;   // the one object mentioned (canonical spelling)
  SlotTemplate tmpl;    // text with the object's words replaced by {{w}}
};

namespace detail {

inline bool inflected_match(const std::string& word, const std::string& object) {
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  const std::string w = lower(word), o = lower(object);
  return w == o || w == o + "s" || w == o + "es" || w == lower(pluralize(object));
}

}  // namespace detail

/**
 * Keep only statements usable as substitution targets: mentioning exactly one
 * of `objects` (inflected forms count) and at least 3 words long. Enumeration
 * artifacts and doubled spaces are removed first.
 */
inline std::vector<KnowledgeSentence> filter_knowledge(
    const std::vector<std::string>& statements, const std::vector<std::string>& objects) {
  if (objects.empty()) {
    throw std::invalid_argument("filter_knowledge: no objects given");
  }
  std::vector<KnowledgeSentence> out;
  for (const auto& raw : statements) {
    std::string text = detail::collapse_spaces(detail::strip_leading_enumeration(raw));
    if (text.empty() || detail::word_count(text) < 3) continue;

    // Words and their positions, for mention counting and slot replacement.
    struct Word {
      size_t pos, len;
      std::string text;
    };
    std::vector<Word> words;
    size_t i = 0;
    while (i < text.size()) {
      if (std::isalpha(static_cast<unsigned char>(text[i]))) {
        size_t b = i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
        words.push_back({b, i - b, text.substr(b, i - b)});
      } else {
        ++i;
      }
    }

    std::string mentioned;
    bool multiple = false;
    for (const auto& object : objects) {
      for (const auto& w : words) {
        if (detail::inflected_match(w.text, object)) {
          if (!mentioned.empty() && mentioned != object) multiple = true;
          mentioned = object;
          break;
        }
      }
      if (multiple) break;
    }
    if (multiple || mentioned.empty()) continue;

    std::string templated;
    size_t cursor = 0;
    for (const auto& w : words) {
      if (!detail::inflected_match(w.text, mentioned)) continue;
      templated += text.substr(cursor, w.pos - cursor);
      templated += "{{w}}";
      cursor = w.pos + w.len;
    }
    templated += text.substr(cursor);

    out.push_back({text, mentioned, SlotTemplate(templated)});
  }
  return out;
}

/// Statement set -> substitution templates, one slot each.
inline std::vector<SlotTemplate> postprocess_knowledge(
    const ParsedSet& statements, const std::vector<std::string>& objects) {
  std::vector<SlotTemplate> out;
  for (auto& ks : filter_knowledge(statements.items, objects)) {
    out.push_back(std::move(ks.tmpl));
  }
  return out;
}

/// Remove [pos, pos+len) from the question and repair the seam whitespace.
inline std::string erase_premise(const std::string& question, size_t pos, size_t len) {
  if (pos > question.size() || len > question.size() - pos) {
    throw std::out_of_range("erase_premise: span outside question");
  }
  if (len == 0) return question;
  std::string out = question.substr(0, pos) + question.substr(pos + len);
  if (pos > 0 && pos < out.size() && out[pos - 1] == ' ' && out[pos] == ' ') {
    out.erase(pos, 1);
  }
  return detail::trim_copy(out);
}

}  // namespace thinksum::think
