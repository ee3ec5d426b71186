#pragma once

/**
 * Ordering-constraint grammar for deduction tasks.
 *
 * A constraint line has the form `name (<|>|=) (name|integer)`, e.g.
 * "black book<purple book" or "yellow book=2". Negative position numbers r
 * are rewritten to N+r+1, so "-1" means the last of N positions. Lines the
 * grammar cannot match become warnings rather than failures; translation
 * output is known to be noisy and robustness belongs to the aggregation
 * stage.
 */

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinksum::think {

enum class Relation { kLess, kGreater, kEqual };

inline char relation_char(Relation r) {
  switch (r) {
    case Relation::kLess: return '<';
    case Relation::kGreater: return '>';
    default: return '=';
  }
}

/// One side of a comparison: an object name or an integer position.
struct Operand {
  std::string name;  // non-empty iff this side is an object reference
  int value = 0;

  bool is_object() const { return !name.empty(); }

  static Operand object(std::string n) { return Operand{std::move(n), 0}; }
  static Operand literal(int v) { return Operand{{}, v}; }

  bool operator==(const Operand& other) const {
    return name == other.name && (is_object() || value == other.value);
  }
};

struct Comparison {
  Operand left;
  Relation relation = Relation::kEqual;
  Operand right;

  bool operator==(const Comparison& other) const {
    return left == other.left && relation == other.relation && right == other.right;
  }

  std::string to_string() const {
    auto side = [](const Operand& op) {
      return op.is_object() ? op.name : std::to_string(op.value);
    };
    return side(left) + relation_char(relation) + side(right);
  }

  /// Same comparison with < and > swapped; equalities are unaffected.
  Comparison reversed() const {
    Comparison c = *this;
    if (c.relation == Relation::kLess) {
      c.relation = Relation::kGreater;
    } else if (c.relation == Relation::kGreater) {
      c.relation = Relation::kLess;
    }
    return c;
  }
};

struct ConstraintSet {
  std::vector<Comparison> constraints;
  std::vector<std::string> object_names;

  std::string to_string() const {
    std::string out;
    for (const auto& c : constraints) {
      out += c.to_string();
      out += '\n';
    }
    return out;
  }

  bool operator==(const ConstraintSet& other) const {
    return constraints == other.constraints && object_names == other.object_names;
  }
};

/// Parse outcome: the constraints that matched the grammar plus one warning
/// per line that did not. An empty constraint list signals translation
/// failure to the caller.
struct ConstraintParse {
  ConstraintSet set;
  std::vector<std::string> warnings;

  bool failed() const { return set.constraints.empty(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string lower_copy(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Case-insensitive lookup returning the canonical spelling.
inline std::optional<std::string> match_object(const std::string& side,
                                               const std::vector<std::string>& names) {
  const std::string key = lower_copy(side);
  for (const auto& n : names) {
    if (lower_copy(n) == key) return n;
  }
  return std::nullopt;
}

inline std::optional<int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
    if (v > 1000000) return std::nullopt;
  }
  return static_cast<int>(s[0] == '-' ? -v : v);
}

// Leading "1." / "2)" enumeration artifacts from list-style generations.
inline std::string strip_enumeration(const std::string& line) {
  size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  size_t d = i;
  while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
  if (d > i && d < line.size() && (line[d] == '.' || line[d] == ')')) {
    // Only treat it as enumeration when something follows the marker.
    std::string rest = trim(line.substr(d + 1));
    if (!rest.empty()) return rest;
  }
  return trim(line);
}

}  // namespace detail

/// Parse one constraint line; nullopt when the grammar does not match.
inline std::optional<Comparison> parse_comparison_line(
    const std::string& line, const std::vector<std::string>& object_names, size_t n_objects) {
  const std::string text = detail::strip_enumeration(line);
  size_t rel_pos = text.find_first_of("<>=");
  if (rel_pos == std::string::npos || rel_pos == 0 || rel_pos + 1 >= text.size()) {
    return std::nullopt;
  }
  Relation rel = text[rel_pos] == '<'   ? Relation::kLess
                 : text[rel_pos] == '>' ? Relation::kGreater
                                        : Relation::kEqual;

  auto resolve = [&](const std::string& raw) -> std::optional<Operand> {
    const std::string side = detail::trim(raw);
    if (auto name = detail::match_object(side, object_names)) {
      return Operand::object(*name);
    }
    if (auto num = detail::parse_int(side)) {
      int v = *num;
      if (v < 0) v = static_cast<int>(n_objects) + v + 1;
      return Operand::literal(v);
    }
    return std::nullopt;
  };

  auto left = resolve(text.substr(0, rel_pos));
  auto right = resolve(text.substr(rel_pos + 1));
  if (!left || !right) return std::nullopt;
  if (!left->is_object() && !right->is_object()) return std::nullopt;
  return Comparison{*left, rel, *right};
}

/**
 * Parse a block of translation output into a constraint set over the given
 * objects. Unmatched lines are collected as warnings; blank lines are
 * skipped silently.
 */
inline ConstraintParse parse_constraints(const std::string& text,
                                         const std::vector<std::string>& object_names,
                                         size_t n_objects) {
  if (n_objects < 2 || object_names.size() != n_objects) {
    throw std::invalid_argument("parse_constraints: need N >= 2 object names");
  }
  ConstraintParse out;
  out.set.object_names = object_names;

  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = detail::trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    if (auto cmp = parse_comparison_line(line, object_names, n_objects)) {
      out.set.constraints.push_back(*cmp);
    } else {
      out.warnings.push_back("unparseable constraint line: \"" + line + "\"");
    }
  }
  return out;
}

}  // namespace thinksum::think
