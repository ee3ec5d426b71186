#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "thinksum/emoji.hpp"
#include "thinksum/parsing.hpp"
#include "thinksum/prompts.hpp"
#include "thinksum/slot_template.hpp"

using namespace thinksum::think;

TEST_CASE("SlotTemplate extracts distinct slots in order of first appearance") {
  SlotTemplate tmpl("A {{w1}} has a {{w2}}, and a {{w1}} is here.");
  CHECK(tmpl.slots == std::vector<std::string>{"w1", "w2"});
  CHECK(SlotTemplate("no slots at all").slots.empty());
  CHECK(SlotTemplate("dangling {{w").slots.empty());
}

TEST_CASE("render_template substitutes every slot occurrence") {
  SlotTemplate tmpl("{{w}} and {{w}} and {{v}}");
  CHECK(render_template(tmpl, {{"w", "x"}, {"v", "y"}}) == "x and x and y");
  CHECK_THROWS_AS(render_template(tmpl, {{"w", "x"}}), std::invalid_argument);
}

TEST_CASE("render_template without normalization changes nothing outside slots") {
  // Substitution locality: splitting the rendered text around the slot
  // values must recover the template fragments byte for byte.
  const std::string before = "a cat are near ";
  const std::string middle = " while the ";
  const std::string after = " do sleep.";
  SlotTemplate tmpl(before + "{{a}}" + middle + "{{b}}" + after);
  const std::string rendered =
      render_template(tmpl, {{"a", "VALUE-ONE"}, {"b", "VALUE-TWO"}}, false);
  CHECK(rendered == before + "VALUE-ONE" + middle + "VALUE-TWO" + after);
}

TEST_CASE("normalization fixes verb agreement after a substituted span") {
  SlotTemplate tmpl("{{w}} are yellow.");
  CHECK(render_template(tmpl, {{"w", "the banana"}}, true) == "The banana is yellow.");
  CHECK(render_template(tmpl, {{"w", "bananas"}}, true) == "Bananas are yellow.");

  SlotTemplate have("{{w}} have stripes.");
  CHECK(render_template(have, {{"w", "a zebra"}}, true) == "A zebra has stripes.");
  CHECK(render_template(have, {{"w", "zebras"}}, true) == "Zebras have stripes.");

  SlotTemplate past("{{w}} were ripe.");
  CHECK(render_template(past, {{"w", "the mango"}}, true) == "The mango was ripe.");

  SlotTemplate does("{{w}} do float.");
  CHECK(render_template(does, {{"w", "one cork"}}, true) == "One cork does float.");

  // Reverse direction: singular verb after a plural phrase.
  SlotTemplate is_tmpl("{{w}} is sweet.");
  CHECK(render_template(is_tmpl, {{"w", "grapes"}}, true) == "Grapes are sweet.");

  // Verbs outside the table stay untouched.
  SlotTemplate ran("{{w}} ran away.");
  CHECK(render_template(ran, {{"w", "the dogs"}}, true) == "The dogs ran away.");
}

TEST_CASE("normalization corrects articles and capitalization") {
  SlotTemplate tmpl("I saw a {{w}} today.");
  CHECK(render_template(tmpl, {{"w", "elephant"}}, true) == "I saw an elephant today.");
  CHECK(render_template(tmpl, {{"w", "dog"}}, true) == "I saw a dog today.");

  SlotTemplate an("I saw an {{w}} today.");
  CHECK(render_template(an, {{"w", "dog"}}, true) == "I saw a dog today.");

  SlotTemplate start("{{w}} is nice. {{w}} is red.");
  CHECK(render_template(start, {{"w", "the barn"}}, true) ==
        "The barn is nice. The barn is red.");

  // "an" words that merely contain the article's letters are left alone.
  SlotTemplate plan("They plan {{w}} here.");
  CHECK(render_template(plan, {{"w", "a party"}}, true) == "They plan a party here.");
}

TEST_CASE("normalization edits stay local to the slot boundary") {
  SlotTemplate tmpl("Both a {{w}} are here and the sky are blue.");
  // The article and verb adjacent to the slot change; the unrelated clause
  // at the end keeps its (wrong) verb.
  CHECK(render_template(tmpl, {{"w", "apple"}}, true) ==
        "Both an apple is here and the sky are blue.");
}

TEST_CASE("pluralize applies the s/es/ies table") {
  CHECK(pluralize("cat") == "cats");
  CHECK(pluralize("fox") == "foxes");
  CHECK(pluralize("bus") == "buses");
  CHECK(pluralize("church") == "churches");
  CHECK(pluralize("dish") == "dishes");
  CHECK(pluralize("berry") == "berries");
  CHECK(pluralize("day") == "days");
  CHECK(pluralize("") == "");
}

TEST_CASE("phrase_is_singular heuristics") {
  CHECK(detail::phrase_is_singular("a banana"));
  CHECK(detail::phrase_is_singular("this glass"));  // double-s stays singular
  CHECK(detail::phrase_is_singular("glass"));
  CHECK(!detail::phrase_is_singular("bananas"));
  CHECK(!detail::phrase_is_singular("two ripe mangos"));
  CHECK(detail::phrase_is_singular("one apple"));
}

TEST_CASE("starts_with_vowel skips non-letters") {
  CHECK(starts_with_vowel("apple"));
  CHECK(starts_with_vowel("  old barn"));
  CHECK(!starts_with_vowel("dog"));
  CHECK(!starts_with_vowel("42"));
}

TEST_CASE("parse_list_output handles numbered lines") {
  const ParsedSet got = parse_list_output("1. cat\n2. mink\n3. dog\n");
  CHECK(got.items == std::vector<std::string>{"cat", "mink", "dog"});
}

TEST_CASE("parse_list_output handles inline markers and a leading item") {
  const ParsedSet got = parse_list_output("cabin 2. igloo 3. tent");
  CHECK(got.items == std::vector<std::string>{"cabin", "igloo", "tent"});
}

TEST_CASE("parse_list_output splits a single unnumbered line on commas") {
  const ParsedSet got = parse_list_output("cat, mink, dog");
  CHECK(got.items == std::vector<std::string>{"cat", "mink", "dog"});
}

TEST_CASE("parse_list_output keeps internal commas on numbered lines") {
  const ParsedSet got = parse_list_output("1. red, ripe fruit\n2. tall tree");
  CHECK(got.items == std::vector<std::string>{"red, ripe fruit", "tall tree"});
}

TEST_CASE("parse_list_output drops empties and duplicates") {
  const ParsedSet got = parse_list_output("1. cat\n\n2. cat\n3.\n4. dog");
  CHECK(got.items == std::vector<std::string>{"cat", "dog"});
  CHECK(parse_list_output("").empty());
  CHECK(parse_list_output("  \n \n").empty());
}

TEST_CASE("enumerate_list then parse_list_output is the identity on clean sets") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<size_t> len(1, 12);
  std::uniform_int_distribution<size_t> words(1, 4);
  std::uniform_int_distribution<size_t> word_len(1, 9);
  std::uniform_int_distribution<int> letter('a', 'z');
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> items;
    const size_t n = len(rng);
    while (items.size() < n) {
      std::string item;
      const size_t w = words(rng);
      for (size_t k = 0; k < w; ++k) {
        if (k) item += ' ';
        const size_t l = word_len(rng);
        for (size_t c = 0; c < l; ++c) item += static_cast<char>(letter(rng));
      }
      bool dup = false;
      for (const auto& existing : items) dup = dup || existing == item;
      if (!dup) items.push_back(item);
    }
    const int start = 1 + trial % 3;
    CHECK(parse_list_output(enumerate_list(items, start)).items == items);
  }
}

TEST_CASE("filter_knowledge keeps exactly-one-object sentences with a single slot") {
  const std::vector<std::string> objects = {"banana", "apple"};
  const auto kept = filter_knowledge(
      {
          "1. The banana is yellow.",          // ok: one object
          "Bananas grow in bunches.",          // ok: plural inflection
          "A banana is longer than an apple.",  // both objects -> dropped
          "Too short.",                        // < 3 words after cleanup
          "The  banana   has a peel.",         // doubled spaces collapsed
          "Nothing relevant here at all.",     // no object -> dropped
      },
      objects);
  REQUIRE(kept.size() == 3);
  for (const auto& ks : kept) {
    CHECK(ks.object == "banana");
    CHECK(ks.tmpl.slots == std::vector<std::string>{"w"});
    // The template with the object bound back must reproduce the cleaned text
    // modulo inflection; for the singular rows it is exact.
  }
  CHECK(kept[0].text == "The banana is yellow.");
  CHECK(kept[0].tmpl.raw == "The {{w}} is yellow.");
  CHECK(render_template(kept[0].tmpl, {{"w", "banana"}}) == kept[0].text);
  CHECK(kept[1].tmpl.raw == "{{w}} grow in bunches.");
  CHECK(kept[2].text == "The banana has a peel.");

  CHECK_THROWS_AS(filter_knowledge({"x"}, {}), std::invalid_argument);
}

TEST_CASE("postprocess_knowledge returns one-slot templates") {
  ParsedSet statements = parse_list_output("1. The banana is curved.\n2. An apple is round.");
  const auto templates = postprocess_knowledge(statements, {"banana", "apple"});
  REQUIRE(templates.size() == 2);
  for (const auto& tmpl : templates) {
    CHECK(tmpl.slots == std::vector<std::string>{"w"});
  }
}

TEST_CASE("erase_premise removes a span and repairs the seam") {
  const std::string q = "Alice is tall. Bob is short. Who is tallest?";
  CHECK(erase_premise(q, 15, 14) == "Alice is tall. Who is tallest?");
  CHECK(erase_premise(q, 0, 15) == "Bob is short. Who is tallest?");
  CHECK(erase_premise(q, 0, 0) == q);
  CHECK_THROWS_AS(erase_premise(q, 0, q.size() + 1), std::out_of_range);
  CHECK_THROWS_AS(erase_premise(q, q.size() + 1, 0), std::out_of_range);
}

TEST_CASE("extract_emoji groups extended clusters") {
  // Single pictograph.
  CHECK(extract_emoji("\U0001F34C") == std::vector<std::string>{"\U0001F34C"});
  // Two separate pictographs, ASCII in between ignored.
  CHECK(extract_emoji("go \U0001F3E0 now \U0001F697!") ==
        std::vector<std::string>{"\U0001F3E0", "\U0001F697"});
  // ZWJ family sequence stays one cluster.
  const std::string family = "\U0001F468\u200D\U0001F469\u200D\U0001F466";
  CHECK(extract_emoji(family) == std::vector<std::string>{family});
  // Skin-tone modifier and VS16 attach to the base.
  const std::string wave = "\U0001F44B\U0001F3FD";
  CHECK(extract_emoji(wave) == std::vector<std::string>{wave});
  const std::string heart = "\u2764\uFE0F";
  CHECK(extract_emoji(heart) == std::vector<std::string>{heart});
  // Regional indicator pair forms one flag.
  const std::string flag = "\U0001F1EB\U0001F1F7";
  CHECK(extract_emoji(flag) == std::vector<std::string>{flag});
  // Keycap sequence.
  const std::string keycap = "1\uFE0F\u20E3";
  CHECK(extract_emoji(keycap) == std::vector<std::string>{keycap});
  // Plain text has none.
  CHECK(extract_emoji("just words").empty());
}

TEST_CASE("reindent_code rescales indentation") {
  const std::string code = "def f():\n  if x:\n    return 1\n  return 0";
  CHECK(reindent_code(code, 4) ==
        "def f():\n    if x:\n        return 1\n    return 0");
  CHECK(reindent_code(code, 1) == "def f():\n if x:\n  return 1\n return 0");
  // Tabs count as one level each.
  CHECK(reindent_code("a:\n\tb\n\t\tc", 2) == "a:\n  b\n    c");
  // Unindented code is unchanged for any width.
  CHECK(reindent_code("x = 1\ny = 2", 3) == "x = 1\ny = 2");
  CHECK_THROWS_AS(reindent_code("x", -1), std::invalid_argument);
}
