#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "thinksum/constraints.hpp"

using namespace thinksum::think;

namespace {

const std::vector<std::string> kBooks = {"black book", "purple book", "yellow book"};

std::vector<std::string> object_names(size_t n) {
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("obj" + std::to_string(i));
  return names;
}

Comparison random_comparison(const std::vector<std::string>& names, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<int> rel(0, 2);
  std::uniform_int_distribution<int> shape(0, 2);
  std::uniform_int_distribution<int> literal(1, static_cast<int>(names.size()));
  Comparison c;
  const int r = rel(rng);
  c.relation = r == 0 ? Relation::kLess : r == 1 ? Relation::kGreater : Relation::kEqual;
  switch (shape(rng)) {
    case 0:
      c.left = Operand::object(names[pick(rng)]);
      c.right = Operand::object(names[pick(rng)]);
      break;
    case 1:
      c.left = Operand::object(names[pick(rng)]);
      c.right = Operand::literal(literal(rng));
      break;
    default:
      c.left = Operand::literal(literal(rng));
      c.right = Operand::object(names[pick(rng)]);
      break;
  }
  return c;
}

}  // namespace

TEST_CASE("parse_comparison_line matches the grammar") {
  auto cmp = parse_comparison_line("black book<purple book", kBooks, 3);
  REQUIRE(cmp.has_value());
  CHECK(cmp->left == Operand::object("black book"));
  CHECK(cmp->relation == Relation::kLess);
  CHECK(cmp->right == Operand::object("purple book"));

  cmp = parse_comparison_line("yellow book=2", kBooks, 3);
  REQUIRE(cmp.has_value());
  CHECK(cmp->right == Operand::literal(2));
  CHECK(cmp->relation == Relation::kEqual);

  cmp = parse_comparison_line("1<black book", kBooks, 3);
  REQUIRE(cmp.has_value());
  CHECK(cmp->left == Operand::literal(1));
  CHECK(cmp->right.is_object());
}

TEST_CASE("parse_comparison_line tolerates spacing, case and enumeration") {
  auto cmp = parse_comparison_line("  2)  Black Book  >  PURPLE BOOK ", kBooks, 3);
  REQUIRE(cmp.has_value());
  // Canonical spelling comes from the object list, not the line.
  CHECK(cmp->left == Operand::object("black book"));
  CHECK(cmp->right == Operand::object("purple book"));
  CHECK(cmp->relation == Relation::kGreater);
}

TEST_CASE("parse_comparison_line rejects non-matching lines") {
  CHECK(!parse_comparison_line("", kBooks, 3).has_value());
  CHECK(!parse_comparison_line("no relation here", kBooks, 3).has_value());
  CHECK(!parse_comparison_line("<purple book", kBooks, 3).has_value());
  CHECK(!parse_comparison_line("black book<", kBooks, 3).has_value());
  CHECK(!parse_comparison_line("green book<purple books", kBooks, 3).has_value());
  CHECK(!parse_comparison_line("1<2", kBooks, 3).has_value());  // needs an object side
  CHECK(!parse_comparison_line("black book ? purple book", kBooks, 3).has_value());
}

TEST_CASE("negative positions rewrite to N+r+1") {
  for (size_t n = 3; n <= 6; ++n) {
    const auto names = object_names(n);
    for (int r = -1; r >= -static_cast<int>(n); --r) {
      const std::string line = "obj0=" + std::to_string(r);
      auto cmp = parse_comparison_line(line, names, n);
      REQUIRE(cmp.has_value());
      CHECK(cmp->right == Operand::literal(static_cast<int>(n) + r + 1));
    }
  }
  // r = -1 means the last position, r = -N the first.
  auto last = parse_comparison_line("obj0=-1", object_names(4), 4);
  REQUIRE(last.has_value());
  CHECK(last->right.value == 4);
  auto first = parse_comparison_line("obj0=-4", object_names(4), 4);
  REQUIRE(first.has_value());
  CHECK(first->right.value == 1);
}

TEST_CASE("parse_constraints collects warnings for unmatched lines") {
  const auto parse = parse_constraints(
      "black book<purple book\n\ngibberish line\nyellow book=3\n", kBooks, 3);
  CHECK(parse.set.constraints.size() == 2);
  REQUIRE(parse.warnings.size() == 1);
  CHECK(parse.warnings[0] == "unparseable constraint line: \"gibberish line\"");
  CHECK(!parse.failed());

  const auto failed = parse_constraints("nothing matches", kBooks, 3);
  CHECK(failed.failed());
  CHECK(failed.warnings.size() == 1);
}

TEST_CASE("parse_constraints validates the object list") {
  CHECK_THROWS_AS(parse_constraints("a<b", {"a"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_constraints("a<b", {"a", "b"}, 3), std::invalid_argument);
}

TEST_CASE("print then parse is the identity on random constraint sets") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<size_t> n_dist(2, 6);
  std::uniform_int_distribution<size_t> m_dist(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = n_dist(rng);
    ConstraintSet set;
    set.object_names = object_names(n);
    const size_t m = m_dist(rng);
    for (size_t k = 0; k < m; ++k) {
      set.constraints.push_back(random_comparison(set.object_names, rng));
    }
    const ConstraintParse parsed = parse_constraints(set.to_string(), set.object_names, n);
    CHECK(parsed.warnings.empty());
    CHECK(parsed.set == set);
  }
}

TEST_CASE("reversed swaps the inequality only") {
  Comparison less{Operand::object("a"), Relation::kLess, Operand::object("b")};
  CHECK(less.reversed().relation == Relation::kGreater);
  CHECK(less.reversed().reversed() == less);
  Comparison eq{Operand::object("a"), Relation::kEqual, Operand::literal(2)};
  CHECK(eq.reversed() == eq);
}

TEST_CASE("comparison to_string round-trips operands") {
  Comparison c{Operand::object("black book"), Relation::kLess, Operand::literal(3)};
  CHECK(c.to_string() == "black book<3");
  auto back = parse_comparison_line(c.to_string(), kBooks, 3);
  REQUIRE(back.has_value());
  CHECK(*back == c);
}
