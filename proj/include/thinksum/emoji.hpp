#pragma once

/**
 * Pictographic cluster extraction.
 *
 * The emoji translation step needs "one emoji" as a unit, which is an
 * extended grapheme cluster, not a codepoint: a base pictograph plus any
 * variation selector, skin-tone modifier, keycap combiner, and zero-width-
 * joiner continuation, or a regional-indicator pair (flag). This implements
 * that subset of cluster segmentation over UTF-8 input directly; anything
 * non-pictographic is skipped.
 */

#include <string>
#include <vector>

namespace thinksum::think {

namespace detail {

inline constexpr char32_t kZwj = 0x200D;
inline constexpr char32_t kVs16 = 0xFE0F;
inline constexpr char32_t kKeycap = 0x20E3;

inline bool is_regional_indicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }
inline bool is_skin_tone(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }
inline bool is_keycap_base(char32_t cp) {
  return cp == '#' || cp == '*' || (cp >= '0' && cp <= '9');
}

/// Decode UTF-8 to codepoints; malformed bytes become U+FFFD.
inline std::vector<char32_t> utf8_decode(const std::string& text) {
  std::vector<char32_t> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      out.push_back(0xFFFD);
      break;
    }
    bool valid = true;
    for (size_t k = 1; k < len; ++k) {
      unsigned char cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(valid ? cp : 0xFFFD);
    i += valid ? len : 1;
  }
  return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

/// Base codepoints we treat as pictographic (the emoji blocks plus the
/// legacy symbols that render as emoji).
inline bool is_pictographic(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs through symbols ext-A
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2190 && cp <= 0x21FF) ||    // arrows
         (cp >= 0x2300 && cp <= 0x23FF) ||    // technical (watch, hourglass, av controls)
         (cp >= 0x25A0 && cp <= 0x25FF) ||    // geometric shapes
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // misc arrows/symbols (stars, squares)
         detail::is_regional_indicator(cp) || cp == 0x3030 || cp == 0x303D || cp == 0x3297 ||
         cp == 0x3299 || cp == 0x00A9 || cp == 0x00AE || cp == 0x2122;
}

/**
 * Pictographic clusters of `text`, in order, as UTF-8 strings. A cluster is a
 * regional-indicator pair, a keycap sequence, or a pictographic base with its
 * trailing modifiers and ZWJ-joined continuations.
 */
inline std::vector<std::string> extract_emoji(const std::string& text) {
  using namespace detail;
  std::vector<char32_t> cps = utf8_decode(text);
  std::vector<std::string> out;
  size_t i = 0;
  auto take_modifiers = [&](std::string& cluster) {
    while (i < cps.size() && (cps[i] == kVs16 || is_skin_tone(cps[i]) || cps[i] == kKeycap)) {
      utf8_append(cluster, cps[i++]);
    }
  };
  while (i < cps.size()) {
    char32_t cp = cps[i];
    // Keycap: '#', '*', digit + optional VS16 + U+20E3.
    if (is_keycap_base(cp) && i + 1 < cps.size() &&
        (cps[i + 1] == kKeycap || (cps[i + 1] == kVs16 && i + 2 < cps.size() && cps[i + 2] == kKeycap))) {
      std::string cluster;
      utf8_append(cluster, cp);
      ++i;
      take_modifiers(cluster);
      out.push_back(cluster);
      continue;
    }
    if (is_regional_indicator(cp)) {
      std::string cluster;
      utf8_append(cluster, cp);
      ++i;
      if (i < cps.size() && is_regional_indicator(cps[i])) {
        utf8_append(cluster, cps[i++]);
      }
      out.push_back(cluster);
      continue;
    }
    if (is_pictographic(cp)) {
      std::string cluster;
      utf8_append(cluster, cp);
      ++i;
      take_modifiers(cluster);
      while (i + 1 < cps.size() && cps[i] == kZwj && is_pictographic(cps[i + 1])) {
        utf8_append(cluster, cps[i]);
        utf8_append(cluster, cps[i + 1]);
        i += 2;
        take_modifiers(cluster);
      }
      out.push_back(cluster);
      continue;
    }
    ++i;
  }
  return out;
}

}  // namespace thinksum::think
