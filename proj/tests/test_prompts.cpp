#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "thinksum/cache.hpp"
#include "thinksum/prompts.hpp"

using namespace thinksum;
using namespace thinksum::think;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("example-generation prompt bytes") {
  PromptRecipe from_definition{RecipeKind::kExampleGeneration,
                               {{"definition", "A kind of horn"}},
                               2};
  CHECK(build_prompt(from_definition) == "A kind of horn. Examples: 1.");

  // An existing terminator is kept, not doubled.
  from_definition.text["definition"] = "A kind of horn.";
  CHECK(build_prompt(from_definition) == "A kind of horn. Examples: 1.");

  PromptRecipe from_request{RecipeKind::kExampleGeneration,
                            {{"request", "List 4 examples of players who throw"}},
                            4};
  CHECK(build_prompt(from_request) == "List 4 examples of players who throw.\n1.");

  from_request.text["demonstration"] = "Q demo\n1. first\n2. second";
  CHECK(build_prompt(from_request) ==
        "Q demo\n1. first\n2. second\nList 4 examples of players who throw.\n1.");
}

TEST_CASE("list-extension prompt bytes") {
  PromptRecipe recipe{RecipeKind::kListExtension,
                      {{"question", "Where is the ball"}, {"answer", "In the box"}},
                      4};
  CHECK(build_prompt(recipe) ==
        "Where is the ball? A possible answer is:\n1. In the box. List 4 other possible "
        "answers in the same format as the first:\n2.");

  // A trailing period on the question is replaced by the question mark.
  recipe.text["question"] = "Where is the ball.";
  CHECK(build_prompt(recipe).rfind("Where is the ball? ", 0) == 0);

  recipe.count = 0;
  CHECK_THROWS_AS(build_prompt(recipe), std::invalid_argument);
}

TEST_CASE("list-of-words prefix bytes") {
  PromptRecipe recipe{RecipeKind::kListOfWordsPrefix, {{"word", "magenta"}}, 0};
  CHECK(build_prompt(recipe) == "List of words: magenta, ");
}

TEST_CASE("fact-generation prompt bytes") {
  PromptRecipe recipe{RecipeKind::kFactGeneration, {{"subject", "bananas"}}, 0};
  CHECK(build_prompt(recipe) == "List facts about bananas. 1.");
}

TEST_CASE("list-differences prompt bytes") {
  PromptRecipe recipe{RecipeKind::kListDifferences, {{"a", "a banana"}, {"b", "a glass"}}, 5};
  CHECK(build_prompt(recipe) == "List 5 differences between a banana and a glass.\n1.");

  recipe.text["demonstration"] = "demo text";
  CHECK(build_prompt(recipe) ==
        "demo text\nList 5 differences between a banana and a glass.\n1.");

  recipe.count = 0;
  CHECK_THROWS_AS(build_prompt(recipe), std::invalid_argument);
}

TEST_CASE("translation prompt bytes") {
  PromptRecipe labels{RecipeKind::kTranslation,
                      {{"source_label", "Persian"},
                       {"source_text", "some text"},
                       {"target_label", "English"}},
                      0};
  CHECK(build_prompt(labels) == "Persian: some text English:");

  PromptRecipe demo{RecipeKind::kTranslation,
                    {{"demonstration", "demo block"}, {"question", "the question"}},
                    0};
  CHECK(build_prompt(demo) == "demo block\n\nthe question\n");
}

TEST_CASE("order-inversion prompt bytes") {
  PromptRecipe recipe{RecipeKind::kOrderInversion,
                      {{"variant", "emoji-movie"}, {"candidate", "Finding Nemo"}},
                      0};
  CHECK(build_prompt(recipe) == "Emoji describing the movie Finding Nemo: ");

  recipe.text["variant"] = "words-movie";
  CHECK(build_prompt(recipe) == "Words describing the movie Finding Nemo: ");

  recipe.text["variant"] = "language-id";
  recipe.text["candidate"] = "Swahili";
  CHECK(build_prompt(recipe) == "The following is a sentence in Swahili: ");

  recipe.text["variant"] = "code-line";
  recipe.text["candidate"] = "print the answer";
  CHECK(build_prompt(recipe) == "# print the answer\n");

  recipe.text["variant"] = "bogus";
  CHECK_THROWS_AS(build_prompt(recipe), std::invalid_argument);
}

TEST_CASE("premise-erasure prompt bytes") {
  const std::string q = "Alice is tall. Bob is short. Who is tallest?";
  PromptRecipe recipe{RecipeKind::kPremiseErasure,
                      {{"question", q}, {"span_begin", "15"}, {"span_length", "14"}},
                      0};
  CHECK(build_prompt(recipe) == "Alice is tall. Who is tallest?");
}

TEST_CASE("auxiliary-knowledge prompt bytes") {
  PromptRecipe recipe{RecipeKind::kAuxiliaryKnowledge,
                      {{"facts", "Fact one.\nFact two."}, {"question", "Which is odd?"}},
                      0};
  CHECK(build_prompt(recipe) == "Fact one.\nFact two.\n\nWhich is odd?");
}

TEST_CASE("chain-of-thought prompt bytes") {
  PromptRecipe recipe{RecipeKind::kChainOfThought,
                      {{"demonstration", "worked example"}, {"question", "Input: q"}},
                      0};
  CHECK(build_prompt(recipe) == "worked example\n\nInput: q\n");
}

TEST_CASE("build_prompt names the missing field") {
  PromptRecipe recipe{RecipeKind::kListOfWordsPrefix, {}, 0};
  CHECK_THROWS_WITH_AS(build_prompt(recipe),
                       "list-of-words-prefix recipe missing field 'word'",
                       std::invalid_argument);
}

TEST_CASE("recipe kind names are stable") {
  CHECK(std::string(recipe_kind_name(RecipeKind::kExampleGeneration)) == "example-generation");
  CHECK(std::string(recipe_kind_name(RecipeKind::kListExtension)) == "list-extension");
  CHECK(std::string(recipe_kind_name(RecipeKind::kOrderInversion)) == "order-inversion");
}

TEST_CASE("PromptLibrary reads named files and strips one trailing newline") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "thinksum_prompt_lib_test";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "demo.txt", std::ios::binary);
    out << "line one\nline two\n";
  }
  {
    std::ofstream out(dir / "tight.txt", std::ios::binary);
    out << "no trailing newline";
  }
  {
    std::ofstream out(dir / "blank.txt", std::ios::binary);
    out << "keeps inner\n\n";
  }

  PromptLibrary lib(dir.string());
  CHECK(lib.has("demo"));
  CHECK(!lib.has("missing"));
  CHECK(lib.get("demo") == "line one\nline two");
  CHECK(lib.get("tight") == "no trailing newline");
  CHECK(lib.get("blank") == "keeps inner\n");  // exactly one newline stripped
  CHECK(lib.get("demo") == "line one\nline two");  // cached read
  CHECK_THROWS_AS(lib.get("missing"), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("bundled demonstration files match their pinned digests") {
  // The pipelines splice these files into prompts verbatim, so their bytes
  // are part of the observable contract; any edit must be deliberate.
  const std::string dir = std::string(THINKSUM_REPO_DIR) + "/prompts/";
  const std::vector<std::pair<std::string, std::string>> pinned = {
      {"cot_invented_words.txt", "af519028c7122d2d"},
      {"cot_known_unknowns.txt", "9574911166483e5b"},
      {"cot_logical_deduction.txt", "2c9b732475d9ff4f"},
      {"cot_odd_one_out.txt", "d91eee48bd0e5fc2"},
      {"cot_phrase_relatedness.txt", "71cbecdacce58d55"},
      {"deduction_translation_demo.txt", "ddb20a0eb79e9cde"},
      {"list_differences_demo.txt", "9dbc8b69166d8b70"},
      {"sports_examples_demo.txt", "b13ad8b4ac03505e"},
  };
  for (const auto& [name, digest] : pinned) {
    CAPTURE(name);
    CHECK(hex64(fnv1a64(slurp(dir + name))) == digest);
  }
}
