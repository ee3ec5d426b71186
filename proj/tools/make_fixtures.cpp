// Generates the bundled task fixtures and their scripted mock tables.
//
// For each pipeline kind this builds ten solvable examples. Scores are not
// written by hand: the pipeline itself is probed once against a mock holding
// only the scripted generations, every score query it issues is assigned a
// log-probability by a per-example rule (constructed so the reference answer
// wins), and the pipeline is then re-run against the finished table to prove
// the fixture is self-consistent before anything is written to disk.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thinksum/thinksum.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace thinksum;

constexpr double kHigh = -1.0;
constexpr double kLow = -8.0;

struct Fixture {
  tasks::TaskInstance instance;
  std::string expected;  // what the pipeline must choose
  std::vector<std::pair<std::string, std::string>> generations;
  std::function<double(const std::string&, const std::string&)> rule;
};

struct MockTable {
  std::vector<std::pair<std::string, std::string>> generations;
  std::vector<std::pair<std::pair<std::string, std::string>, double>> scores;
  std::map<std::string, std::string> gen_index;
  std::map<std::pair<std::string, std::string>, double> score_index;

  void add_generation(const std::string& prompt, const std::string& text) {
    auto it = gen_index.find(prompt);
    if (it != gen_index.end()) {
      if (it->second != text) {
        throw std::runtime_error("conflicting generation for prompt:\n" + prompt);
      }
      return;
    }
    gen_index.emplace(prompt, text);
    generations.emplace_back(prompt, text);
  }

  void add_score(const std::string& prompt, const std::string& continuation, double logprob) {
    const auto key = std::make_pair(prompt, continuation);
    auto it = score_index.find(key);
    if (it != score_index.end()) {
      if (it->second != logprob) {
        throw std::runtime_error("conflicting score for query:\n" + prompt + "|" + continuation);
      }
      return;
    }
    score_index.emplace(key, logprob);
    scores.emplace_back(key, logprob);
  }

  void fill(MockBackend& mock) const {
    for (const auto& [prompt, text] : generations) mock.add_generation(prompt, text);
    for (const auto& [key, logprob] : scores) mock.add_score(key.first, key.second, logprob);
  }

  ordered_json to_json() const {
    ordered_json doc;
    doc["scores"] = ordered_json::array();
    for (const auto& [key, logprob] : scores) {
      doc["scores"].push_back(
          {{"prompt", key.first}, {"continuation", key.second}, {"logprob", logprob}});
    }
    doc["generations"] = ordered_json::array();
    for (const auto& [prompt, text] : generations) {
      doc["generations"].push_back({{"prompt", prompt}, {"text", text}});
    }
    return doc;
  }
};

ordered_json instance_to_json(const tasks::TaskInstance& instance) {
  ordered_json row;
  row["input"] = instance.input;
  if (!instance.target_scores.empty()) {
    ordered_json scores;
    for (const auto& choice : instance.choices) scores[choice] = instance.target_scores.at(choice);
    row["target_scores"] = scores;
  } else if (!instance.choices.empty()) {
    row["choices"] = instance.choices;
  }
  if (!instance.target.empty()) row["target"] = instance.target;
  if (!instance.metadata.empty()) row["metadata"] = instance.metadata;
  return row;
}

void emit_task(const std::string& kind_name, std::vector<Fixture> fixtures,
               const think::PromptLibrary& prompts, const fs::path& out_dir,
               const ordered_json& config_overrides = ordered_json::object()) {
  const tasks::PipelineKind kind = tasks::pipeline_kind_from_name(kind_name);
  tasks::TaskConfig config;
  if (!config_overrides.empty()) tasks::apply_config_overrides(config_overrides, config);

  MockTable table;
  for (const auto& fixture : fixtures) {
    for (const auto& [prompt, text] : fixture.generations) table.add_generation(prompt, text);
  }

  // Probe pass: enumerate the score queries each example issues.
  for (const auto& fixture : fixtures) {
    MockBackend probe;
    table.fill(probe);
    tasks::PipelineContext context(probe, config, prompts);
    tasks::PipelineResult result = tasks::solve_instance(context, fixture.instance, kind);
    for (const auto& entry : result.trace) {
      if (entry.kind != tasks::TraceEntry::Kind::kScore) continue;
      table.add_score(entry.prompt, entry.continuation,
                      fixture.rule(entry.prompt, entry.continuation));
    }
  }

  // Verification pass: with the finished table every example must resolve
  // to its reference answer without falling back.
  MockBackend final_mock;
  table.fill(final_mock);
  for (size_t i = 0; i < fixtures.size(); ++i) {
    tasks::PipelineContext context(final_mock, config, prompts);
    tasks::PipelineResult result = tasks::solve_instance(context, fixtures[i].instance, kind);
    if (result.used_fallback) {
      throw std::runtime_error(kind_name + " example " + std::to_string(i) +
                               " fell back: " +
                               (result.warnings.empty() ? "?" : result.warnings.front()));
    }
    if (result.chosen != fixtures[i].expected) {
      throw std::runtime_error(kind_name + " example " + std::to_string(i) + " chose '" +
                               result.chosen + "', wanted '" + fixtures[i].expected + "'");
    }
  }

  ordered_json task;
  task["name"] = kind_name + "-fixture";
  task["description"] = "scripted examples for the " + kind_name + " pipeline";
  ordered_json metadata;
  metadata["pipeline"] = kind_name;
  if (!config_overrides.empty()) metadata["config"] = config_overrides;
  task["metadata"] = metadata;
  task["examples"] = ordered_json::array();
  for (const auto& fixture : fixtures) task["examples"].push_back(instance_to_json(fixture.instance));

  std::ofstream task_out(out_dir / (kind_name + ".task.json"));
  task_out << task.dump(2) << "\n";
  std::ofstream mock_out(out_dir / (kind_name + ".mock.json"));
  mock_out << table.to_json().dump(2) << "\n";
  std::cout << kind_name << ": " << fixtures.size() << " examples, " << table.scores.size()
            << " scores, " << table.generations.size() << " generations\n";
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string join_numbered_tail(const std::vector<std::string>& items, int start) {
  // "first\n<start+1>. second\n..." — continuation of a numbered list whose
  // first marker is already part of the prompt.
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += "\n" + std::to_string(start + static_cast<int>(i)) + ". ";
    out += items[i];
  }
  return out;
}

// --------------------------------------------------------------------------
// Word sets shared by the odd-one-out variants
// --------------------------------------------------------------------------

struct OddSet {
  std::vector<std::string> related;
  std::string odd;
};

const std::vector<OddSet> kOddSets = {
    {{"blue", "pink", "green", "magenta"}, "banana"},
    {{"pencil", "eraser", "notebook", "folder"}, "baby"},
    {{"cat", "dog", "horse", "sheep"}, "wagon"},
    {{"violin", "piano", "flute", "cello"}, "pebble"},
    {{"iron", "copper", "zinc", "silver"}, "cloud"},
    {{"carrot", "potato", "onion", "cabbage"}, "kite"},
    {{"truck", "bus", "train", "tram"}, "apple"},
    {{"shirt", "coat", "sock", "scarf"}, "lamp"},
    {{"salmon", "trout", "tuna", "herring"}, "bread"},
    {{"mars", "venus", "jupiter", "saturn"}, "spoon"},
};

std::vector<std::string> odd_set_words(const OddSet& set, size_t rotation) {
  std::vector<std::string> words = set.related;
  words.insert(words.begin() + (rotation % (words.size() + 1)), set.odd);
  return words;
}

tasks::TaskInstance choice_instance(const std::string& input,
                                    const std::vector<std::string>& choices,
                                    const std::string& target) {
  tasks::TaskInstance instance;
  instance.input = input;
  instance.choices = choices;
  for (const auto& c : choices) instance.target_scores[c] = c == target ? 1.0 : 0.0;
  return instance;
}

std::vector<Fixture> odd_one_out_fixtures() {
  std::vector<Fixture> fixtures;
  for (size_t i = 0; i < kOddSets.size(); ++i) {
    const OddSet& set = kOddSets[i];
    const auto words = odd_set_words(set, i);
    Fixture f;
    f.instance = choice_instance("Which word does not belong with the others?", words, set.odd);
    f.expected = set.odd;
    const std::string odd = set.odd;
    f.rule = [odd](const std::string& prompt, const std::string& continuation) {
      // A related pair predicts each other; anything touching the odd word
      // does not.
      return contains(prompt, odd + ",") || continuation == odd ? kLow : kHigh;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> odd_one_out_fact_fixtures(const think::PromptLibrary& prompts) {
  std::vector<Fixture> fixtures;
  for (size_t i = 0; i < kOddSets.size(); ++i) {
    const OddSet& set = kOddSets[i];
    const auto words = odd_set_words(set, i);
    Fixture f;
    f.instance = choice_instance("Which word does not belong with the others?", words, set.odd);
    f.expected = set.odd;

    think::PromptRecipe recipe{think::RecipeKind::kListDifferences,
                               {{"a", words[0]}, {"b", words[1]}},
                               5};
    recipe.text["demonstration"] = prompts.get("list_differences_demo");
    std::vector<std::string> statements;
    for (size_t r = 0; r < 3; ++r) {
      statements.push_back("The " + set.related[r] + " is one of the group.");
    }
    statements.push_back("The " + set.odd + " does not belong here.");
    statements.push_back("A " + set.odd + " does not belong here.");
    f.generations.emplace_back(think::build_prompt(recipe), join_numbered_tail(statements, 1));

    const std::vector<std::string> all = words;
    const std::string odd = set.odd;
    f.rule = [all, odd](const std::string&, const std::string& continuation) {
      std::string subject;
      for (const auto& w : all) {
        if (contains(" " + continuation + " ", " " + w + " ")) subject = w;
      }
      if (contains(continuation, "does not belong")) return subject == odd ? kHigh : kLow;
      return subject == odd ? kLow : kHigh;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

std::vector<Fixture> phrase_relatedness_fixtures() {
  struct Case {
    std::string query;
    std::vector<std::string> options;
    std::string target;
  };
  const std::vector<Case> cases = {
      {"home town", {"town center", "location", "native city", "home run"}, "native city"},
      {"ice cream", {"antarctica", "titanic", "dessert", "sour cream"}, "dessert"},
      {"rain coat", {"umbrella", "summer dress", "rain dance", "sand castle"}, "umbrella"},
      {"night sky", {"constellation", "breakfast", "lawn mower", "postcard"}, "constellation"},
      {"sea shore", {"beach", "attic", "volcano", "printer"}, "beach"},
      {"fire wood", {"kindling", "snowball", "teacup", "ladder"}, "kindling"},
      {"book shelf", {"library", "swimming pool", "parachute", "anthill"}, "library"},
      {"race track", {"speedway", "pillow", "orchard", "chimney"}, "speedway"},
      {"bee hive", {"honeycomb", "iceberg", "doormat", "lantern"}, "honeycomb"},
      {"corn field", {"harvest", "submarine", "hallway", "earring"}, "harvest"},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance(
        "For each word or phrase, identify the most related choice from the listed options.",
        c.options, c.target);
    f.instance.metadata["query"] = c.query;
    f.expected = c.target;
    const std::string target = c.target;
    f.rule = [target](const std::string& prompt, const std::string&) {
      return contains(prompt, "List of words: " + target + ", ") ? kHigh : kLow;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> codenames_fixtures() {
  struct Case {
    std::string query;
    std::vector<std::string> board;
    std::vector<std::string> targets;  // alphabetized
  };
  const std::vector<Case> cases = {
      {"water", {"river", "desk", "ocean", "carpet", "mirror", "violin"}, {"ocean", "river"}},
      {"music", {"drum", "pickle", "flute", "ladder", "sofa", "pigeon"}, {"drum", "flute"}},
      {"cold", {"glacier", "toast", "winter", "pencil", "meadow", "engine"}, {"glacier", "winter"}},
      {"royalty", {"crown", "shovel", "queen", "biscuit", "tunnel", "moss"}, {"crown", "queen"}},
      {"space", {"rocket", "teapot", "comet", "sandal", "fence", "walrus"}, {"comet", "rocket"}},
      {"fire", {"ember", "puddle", "torch", "cushion", "marble", "fog"}, {"ember", "torch"}},
      {"farm", {"tractor", "subway", "barn", "necklace", "cinema", "surf"}, {"barn", "tractor"}},
      {"night", {"moon", "spatula", "owl", "billboard", "lagoon", "chalk"}, {"moon", "owl"}},
      {"speed", {"cheetah", "anchor", "bullet", "pillow", "canal", "yarn"}, {"bullet", "cheetah"}},
      {"money", {"bank", "shrub", "coin", "blizzard", "paddle", "easel"}, {"bank", "coin"}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance.input = "Pick the two words most associated with the clue.";
    f.instance.choices = c.board;
    f.instance.target = c.targets[0] + ", " + c.targets[1];
    f.instance.metadata["query"] = c.query;
    f.instance.metadata["k"] = 2;
    f.expected = f.instance.target;
    const std::vector<std::string> targets = c.targets;
    f.rule = [targets](const std::string& prompt, const std::string&) {
      for (const auto& t : targets) {
        if (contains(prompt, "List of words: " + t + ", ")) return kHigh;
      }
      return -7.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

std::vector<Fixture> invented_words_fixtures() {
  struct Case {
    std::string w1, w2, def1, def2;
    std::vector<std::string> ex1, ex2;
    std::vector<std::string> descs;  // descs[0] is right
  };
  const std::vector<Case> cases = {
      {"binne", "bam", "A binne is a small animal kept at home", "A bam is a place where an animal sleeps",
       {"cat", "dog"}, {"den", "nest"},
       {"places for pets", "a kind of food", "tools for gardening", "bright colors"}},
      {"wug", "fep", "A wug is a bird that sings at dawn", "A fep is a spot high in a tree",
       {"lark", "wren"}, {"perch", "branch"},
       {"spots where birds rest", "deep sea fish", "heavy machines", "winter coats"}},
      {"tove", "gyre", "A tove is a tool for digging", "A gyre is a hole dug in the ground",
       {"spade", "trowel"}, {"pit", "trench"},
       {"made by digging", "types of cheese", "songs for children", "kinds of weather"}},
      {"florp", "dax", "A florp is a sweet fruit", "A dax is a drink made from fruit",
       {"mango", "peach"}, {"juice", "nectar"},
       {"sweet drinks", "metal fasteners", "board games", "mountain peaks"}},
      {"zorp", "quib", "A zorp is a working vehicle", "A quib is a shed where vehicles are kept",
       {"tractor", "truck"}, {"garage", "barn"},
       {"places for vehicles", "ocean currents", "dance steps", "paper sizes"}},
      {"snib", "glorf", "A snib is a small sailing boat", "A glorf is a place where boats dock",
       {"dinghy", "sloop"}, {"harbor", "marina"},
       {"places for boats", "desert plants", "breakfast foods", "card tricks"}},
      {"trell", "vop", "A trell is a book for learning", "A vop is a room where books are kept",
       {"textbook", "atlas"}, {"library", "study"},
       {"rooms with books", "racing horses", "glass bottles", "storm clouds"}},
      {"miv", "crun", "A miv is an insect that makes honey", "A crun is a home built by insects",
       {"bee", "wasp"}, {"hive", "nest"},
       {"homes of insects", "silver spoons", "radio shows", "ski slopes"}},
      {"plof", "yerb", "A plof is a fish kept for show", "A yerb is a bowl where fish swim",
       {"goldfish", "guppy"}, {"tank", "bowl"},
       {"bowls for fish", "brick walls", "violin strings", "sand dunes"}},
      {"skree", "dront", "A skree is a bird of prey", "A dront is a nest built on a cliff",
       {"hawk", "eagle"}, {"eyrie", "roost"},
       {"nests of raptors", "tea kettles", "subway lines", "wool sweaters"}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    std::string cap1 = c.w1;
    cap1[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap1[0])));
    std::vector<std::string> statements;
    for (const auto& desc : c.descs) statements.push_back(cap1 + " " + c.w2 + "s are " + desc + ".");
    f.instance = choice_instance(
        "The word '" + c.w1 + "' means: " + c.def1 + ". The word '" + c.w2 + "' means: " +
            c.def2 + ". Question: Which of the following sentences best characterizes " + c.w1 +
            " " + c.w2 + "s?",
        statements, statements[0]);
    f.instance.metadata["words"] = {c.w1, c.w2};
    f.instance.metadata["definitions"] = {c.def1, c.def2};
    f.expected = statements[0];

    for (size_t w = 0; w < 2; ++w) {
      think::PromptRecipe recipe{think::RecipeKind::kExampleGeneration,
                                 {{"definition", w == 0 ? c.def1 : c.def2}},
                                 2};
      const auto& examples = w == 0 ? c.ex1 : c.ex2;
      f.generations.emplace_back(think::build_prompt(recipe), join_numbered_tail(examples, 1));
    }

    const std::string right = c.descs[0];
    const std::string w1 = c.w1, w2 = c.w2;
    f.rule = [right, w1, w2](const std::string&, const std::string& text) {
      const bool is_template = contains(text, w1) || contains(text, w2);
      if (contains(text, right)) return is_template ? -10.0 : -2.0;
      return is_template ? -2.0 : -9.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> novel_concepts_fixtures() {
  struct Case {
    std::vector<std::string> words;
    std::vector<std::string> tails;  // tails[0] is right; appended to "They all ..."
  };
  const std::vector<Case> cases = {
      {{"whale", "dolphin", "seal"},
       {"are mammals that live in the sea.", "are types of fish.", "can fly long distances.",
        "are found in the desert."}},
      {{"oak", "maple", "birch"},
       {"are trees with broad leaves.", "are kinds of grass.", "grow under water.",
        "are carved from stone."}},
      {{"hammer", "wrench", "chisel"},
       {"are tools held in the hand.", "are musical instruments.", "are worn on the feet.",
        "are baked in an oven."}},
      {{"sparrow", "robin", "finch"},
       {"are small garden birds.", "are hunting dogs.", "live at the bottom of lakes.",
        "are made of paper."}},
      {{"copper", "tin", "nickel"},
       {"are metals used in coins.", "are tropical fruits.", "are spoken languages.",
        "are knitted from wool."}},
      {{"canoe", "kayak", "raft"},
       {"are small boats moved by hand.", "are mountain peaks.", "are types of bread.",
        "are pieces of furniture."}},
      {{"waltz", "tango", "polka"},
       {"are dances done in pairs.", "are citrus fruits.", "are breeds of cattle.",
        "are carpentry joints."}},
      {{"basil", "thyme", "sage"},
       {"are herbs used in cooking.", "are precious stones.", "are units of distance.",
        "are parts of an engine."}},
      {{"mitten", "glove", "muff"},
       {"are worn to keep hands warm.", "are kinds of soup.", "are played with a bow.",
        "are stages of the moon."}},
      {{"comet", "meteor", "asteroid"},
       {"are objects that cross the sky.", "are garden vegetables.", "are sewing stitches.",
        "are types of cheese."}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    std::vector<std::string> statements;
    for (const auto& tail : c.tails) statements.push_back("They all " + tail);
    std::string listed;
    for (size_t i = 0; i < c.words.size(); ++i) listed += (i ? ", " : "") + c.words[i];
    f.instance = choice_instance("What do " + listed + " have in common?", statements,
                                 statements[0]);
    f.instance.metadata["words"] = c.words;
    f.expected = statements[0];
    const std::string right = c.tails[0];
    f.rule = [right](const std::string&, const std::string& text) {
      const bool is_template = contains(text, "They all");
      if (contains(text, right)) return is_template ? -10.0 : -2.0;
      return is_template ? -2.0 : -9.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

std::vector<Fixture> sports_fixtures(const think::PromptLibrary& prompts) {
  struct Case {
    std::string subject, action;
    bool plausible;
    std::vector<std::string> others;
  };
  // Pairs share an action and therefore a generation prompt; the generated
  // player list must be identical within a pair and exclude both subjects.
  const std::vector<Case> cases = {
      {"Draymond Green", "threw a touchdown", false,
       {"Aaron Rodgers", "Patrick Mahomes", "Joe Montana", "Peyton Manning"}},
      {"Tom Brady", "threw a touchdown", true,
       {"Aaron Rodgers", "Patrick Mahomes", "Joe Montana", "Peyton Manning"}},
      {"Lionel Messi", "hit a home run", false,
       {"Hank Aaron", "Barry Bonds", "Willie Mays", "Lou Gehrig"}},
      {"Babe Ruth", "hit a home run", true,
       {"Hank Aaron", "Barry Bonds", "Willie Mays", "Lou Gehrig"}},
      {"Serena Williams", "scored a slam dunk", false,
       {"Kobe Bryant", "Shaquille O'Neal", "Vince Carter", "Michael Jordan"}},
      {"LeBron James", "scored a slam dunk", true,
       {"Kobe Bryant", "Shaquille O'Neal", "Vince Carter", "Michael Jordan"}},
      {"Usain Bolt", "sank a long putt", false,
       {"Jack Nicklaus", "Phil Mickelson", "Rory McIlroy", "Arnold Palmer"}},
      {"Tiger Woods", "sank a long putt", true,
       {"Jack Nicklaus", "Phil Mickelson", "Rory McIlroy", "Arnold Palmer"}},
      {"Wayne Gretzky", "served an ace", false,
       {"Rafael Nadal", "Novak Djokovic", "Pete Sampras", "Andy Murray"}},
      {"Roger Federer", "served an ace", true,
       {"Rafael Nadal", "Novak Djokovic", "Pete Sampras", "Andy Murray"}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance("Statement: " + c.subject + " " + c.action +
                                     ". Plausible/implausible?",
                                 {"plausible", "implausible"},
                                 c.plausible ? "plausible" : "implausible");
    f.instance.metadata["subject"] = c.subject;
    f.instance.metadata["action"] = c.action;
    f.expected = c.plausible ? "plausible" : "implausible";

    think::PromptRecipe recipe{think::RecipeKind::kExampleGeneration,
                               {{"request", "List 4 examples of players who " + c.action}},
                               4};
    recipe.text["demonstration"] = prompts.get("sports_examples_demo");
    f.generations.emplace_back(think::build_prompt(recipe), join_numbered_tail(c.others, 1));

    const std::string statement = c.subject + " " + c.action;
    const bool plausible = c.plausible;
    f.rule = [statement, plausible](const std::string&, const std::string& text) {
      if (text == statement) return plausible ? -2.0 : -10.0;
      return -2.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> known_unknowns_fixtures() {
  struct Case {
    std::string question, answer;
    bool known;
    std::vector<std::string> alts;
  };
  const std::vector<Case> cases = {
      {"What was the population of San Francisco in 2018?", "879,676", true,
       {"870,000", "1,000,000", "850,000"}},
      {"How often did Abraham Lincoln cut his toenails?", "Every Saturday night", false,
       {"Every other day", "Once a month", "Twice a week"}},
      {"What is the capital of Australia?", "Canberra", true, {"Sydney", "Melbourne", "Perth"}},
      {"What did Cleopatra dream about on her twelfth birthday?", "A golden barge", false,
       {"A silver crown", "A flock of ibises", "A storm on the Nile"}},
      {"How many moons does Mars have?", "Two", true, {"One", "Three", "Four"}},
      {"What will the weather be in Lisbon a year from today?", "Sunny with light wind", false,
       {"Heavy rain", "Overcast and cool", "A late storm"}},
      {"Who wrote Pride and Prejudice?", "Jane Austen", true,
       {"Charlotte Bronte", "Mary Shelley", "George Eliot"}},
      {"What song was hummed by the first person to cross London Bridge?", "A fishing ballad",
       false, {"A royal anthem", "A drinking song", "A lullaby"}},
      {"What is the chemical symbol for gold?", "Au", true, {"Ag", "Go", "Gd"}},
      {"How many leaves fell in Hyde Park last autumn?", "Around twelve million", false,
       {"About nine million", "Nearly twenty million", "Half a million"}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance(c.question, {c.answer, "Unknown"},
                                 c.known ? c.answer : "Unknown");
    f.expected = c.known ? c.answer : "Unknown";

    think::PromptRecipe recipe{think::RecipeKind::kListExtension,
                               {{"question", c.question}, {"answer", c.answer}},
                               4};
    f.generations.emplace_back(think::build_prompt(recipe), join_numbered_tail(c.alts, 2));

    const std::string answer = c.answer;
    const bool known = c.known;
    f.rule = [answer, known](const std::string&, const std::string& text) {
      const bool is_answer = text.size() >= answer.size() &&
                             text.compare(text.size() - answer.size(), answer.size(), answer) == 0;
      if (!known) return -2.0;
      return is_answer ? -1.0 : -6.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> misconceptions_fixtures() {
  // {false claim, true counterpart}
  const std::vector<std::array<std::string, 2>> cases = {
      {"Vaccines cause autism.", "Vaccines do not cause autism."},
      {"We use only ten percent of our brains.", "We use virtually all of our brain."},
      {"Goldfish have a memory of three seconds.", "Goldfish can remember things for months."},
      {"Lightning never strikes the same place twice.",
       "Lightning often strikes the same place repeatedly."},
      {"The Great Wall of China is visible from the Moon.",
       "The Great Wall of China cannot be seen from the Moon."},
      {"Bats are blind.", "Bats can see."},
      {"Cracking knuckles causes arthritis.", "Cracking knuckles does not cause arthritis."},
      {"Bulls are enraged by the color red.", "Bulls do not distinguish red from other colors."},
      {"Humans have exactly five senses.", "Humans have far more than five senses."},
      {"Sugar makes children hyperactive.", "Sugar does not cause hyperactivity in children."},
  };
  std::vector<Fixture> fixtures;
  for (size_t i = 0; i < cases.size(); ++i) {
    // Alternate which statement comes first so the target index varies.
    const std::string false_s = cases[i][0];
    const std::string true_s = cases[i][1];
    std::vector<std::string> pair =
        i % 2 == 0 ? std::vector<std::string>{false_s, true_s}
                   : std::vector<std::string>{true_s, false_s};
    Fixture f;
    f.instance = choice_instance("Which of these statements is true?", pair, true_s);
    f.expected = true_s;
    f.rule = [false_s, true_s](const std::string& prompt, const std::string& continuation) {
      const bool about_truth = contains(prompt, true_s);
      const bool scoring_true = continuation == " True";
      if (about_truth) return scoring_true ? -1.0 : -6.0;
      return scoring_true ? -6.0 : -1.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

std::vector<Fixture> emoji_movie_fixtures() {
  struct Case {
    std::string emoji;
    std::vector<std::string> movies;
    std::string target;
  };
  const std::vector<Case> cases = {
      {"\U0001F925", {"pinocchio", "heat", "the big sleep", "inception"}, "pinocchio"},
      {"\U0001F988", {"jaws", "up", "frozen", "cars"}, "jaws"},
      {"\U0001F47B\U0001F47B", {"ghostbusters", "rocky", "alien", "titanic"}, "ghostbusters"},
      {"\U0001F6A2\U0001F9CA", {"titanic", "jaws", "up", "heat"}, "titanic"},
      {"\U0001F98D\U0001F34C", {"king kong", "alien", "rocky", "dune"}, "king kong"},
      {"\U0001F577\uFE0F\U0001F9D1", {"spider-man", "frozen", "cars", "up"}, "spider-man"},
      {"\U0001F981\U0001F451", {"the lion king", "jaws", "heat", "dune"}, "the lion king"},
      {"\U0001F697\U0001F4A8", {"cars", "titanic", "alien", "rocky"}, "cars"},
      {"\u2744\uFE0F\U0001F478", {"frozen", "inception", "heat", "jaws"}, "frozen"},
      {"\U0001F94A", {"rocky", "up", "dune", "alien"}, "rocky"},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance("What movie does this emoji describe? " + c.emoji, c.movies,
                                 c.target);
    f.instance.metadata["stimulus"] = c.emoji;
    f.expected = c.target;
    const std::string target = c.target;
    f.rule = [target](const std::string& prompt, const std::string&) {
      return contains(prompt, "movie " + target + ":") ? kHigh : -7.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> language_id_fixtures() {
  struct Case {
    std::string sentence;
    std::vector<std::string> languages;
    std::string target;
  };
  const std::vector<Case> cases = {
      {"Le chat dort sur le canape.", {"French", "Turkish", "Finnish", "Swahili"}, "French"},
      {"El rio cruza toda la ciudad.", {"Spanish", "Polish", "Dutch", "Korean"}, "Spanish"},
      {"Der Zug kommt immer zu spaet.", {"German", "Italian", "Hindi", "Greek"}, "German"},
      {"Il pane fresco profuma di forno.", {"Italian", "Danish", "Czech", "Thai"}, "Italian"},
      {"O mar estava calmo pela manha.", {"Portuguese", "Hungarian", "Welsh", "Zulu"},
       "Portuguese"},
      {"De fiets staat tegen de muur.", {"Dutch", "Romanian", "Basque", "Tamil"}, "Dutch"},
      {"Kissa nukkuu ikkunalaudalla.", {"Finnish", "French", "Serbian", "Malay"}, "Finnish"},
      {"Pociag odjezdza z peronu trzeciego.", {"Polish", "Swedish", "Catalan", "Urdu"}, "Polish"},
      {"Solen gar ned bakom bergen.", {"Swedish", "Estonian", "Irish", "Hausa"}, "Swedish"},
      {"Koprunun altindan tekneler gecer.", {"Turkish", "Norwegian", "Latvian", "Khmer"},
       "Turkish"},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance(c.sentence, c.languages, c.target);
    f.instance.metadata["sentence"] = c.sentence;
    f.expected = c.target;
    const std::string target = c.target;
    f.rule = [target](const std::string& prompt, const std::string&) {
      return contains(prompt, "sentence in " + target + ":") ? kHigh : -7.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> code_line_fixtures() {
  struct Case {
    std::string code;
    std::vector<std::string> comments;
    std::string target;
  };
  const std::vector<Case> cases = {
      {"for i in range(10):\n    print(i)",
       {"print the numbers from 0 to 9", "sort a list of names", "open a file for writing",
        "compute a factorial"},
       "print the numbers from 0 to 9"},
      {"total = 0\nfor x in xs:\n    total += x",
       {"sum the elements of a list", "reverse a string", "find the largest prime",
        "parse a date"},
       "sum the elements of a list"},
      {"if n % 2 == 0:\n    return True\nreturn False",
       {"check whether a number is even", "count vowels in a word", "shuffle a deck",
        "read standard input"},
       "check whether a number is even"},
      {"with open(path) as f:\n    data = f.read()",
       {"read a whole file into memory", "draw a circle", "send an email",
        "multiply two matrices"},
       "read a whole file into memory"},
      {"while queue:\n    node = queue.pop(0)",
       {"process items in breadth-first order", "format a phone number", "play a sound",
        "encrypt a password"},
       "process items in breadth-first order"},
      {"result = [x * x for x in xs]",
       {"square every element of a list", "delete a directory", "fetch a web page",
        "balance a binary tree"},
       "square every element of a list"},
      {"d = {}\nfor w in words:\n    d[w] = d.get(w, 0) + 1",
       {"count how often each word occurs", "resize an image", "roll two dice",
        "convert miles to kilometers"},
       "count how often each word occurs"},
      {"xs.sort()\nreturn xs[0]",
       {"return the smallest element", "print a calendar", "copy a file",
        "generate a password"},
       "return the smallest element"},
      {"s = input()\nprint(s[::-1])",
       {"reverse the entered text", "compute compound interest", "list running processes",
        "plot a histogram"},
       "reverse the entered text"},
      {"try:\n    run()\nexcept Exception:\n    pass",
       {"ignore any error raised by run", "sort numbers in descending order",
        "download a dataset", "measure elapsed time"},
       "ignore any error raised by run"},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance(c.code, c.comments, c.target);
    f.instance.metadata["code"] = c.code;
    f.expected = c.target;
    const std::string target = c.target;
    f.rule = [target](const std::string& prompt, const std::string&) {
      return contains(prompt, "# " + target + "\n") ? -2.0 : -5.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

std::vector<Fixture> logical_deduction_fixtures(const think::PromptLibrary& prompts) {
  struct Case {
    std::string noun;
    std::vector<std::string> colors;  // listed order
    std::vector<int> rank;            // rank[i] = size rank of colors[i], 1 = smallest
  };
  const std::vector<Case> cases = {
      {"plate", {"black", "white", "green", "blue", "red"}, {2, 4, 3, 1, 5}},
      {"book", {"red", "green", "blue", "yellow", "purple"}, {1, 3, 5, 2, 4}},
      {"box", {"gray", "brown", "orange", "pink", "teal"}, {5, 1, 2, 4, 3}},
      {"mug", {"white", "black", "red", "green", "blue"}, {3, 5, 1, 4, 2}},
      {"jar", {"amber", "clear", "blue", "green", "smoky"}, {4, 2, 5, 3, 1}},
      {"bowl", {"ivory", "navy", "crimson", "olive", "slate"}, {2, 1, 4, 5, 3}},
      {"vase", {"tall", "short", "round", "square", "fluted"}, {5, 3, 2, 1, 4}},
      {"crate", {"oak", "pine", "cedar", "birch", "ash"}, {1, 4, 2, 5, 3}},
      {"basket", {"woven", "wire", "plastic", "paper", "cloth"}, {3, 2, 5, 1, 4}},
      {"tray", {"silver", "copper", "wooden", "glass", "stone"}, {4, 5, 1, 3, 2}},
  };
  const std::string demo = prompts.get("deduction_translation_demo");
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    const size_t n = c.colors.size();
    std::vector<std::string> names;
    for (const auto& color : c.colors) names.push_back(color + " " + c.noun);
    std::vector<std::string> by_rank(n);  // by_rank[r-1] = name with rank r
    for (size_t i = 0; i < n; ++i) by_rank[c.rank[i] - 1] = names[i];

    std::string listed;
    for (size_t i = 0; i < n; ++i) {
      listed += i + 1 == n ? "and a " + names[i] : "a " + names[i] + ", ";
    }
    std::string story;
    for (size_t r = 0; r + 1 < n; ++r) {
      story += " The " + by_rank[r] + " is smaller than the " + by_rank[r + 1] + ".";
    }
    Fixture f;
    std::vector<std::string> choices;
    for (const auto& name : names) choices.push_back("The " + name + " is the smallest.");
    f.instance = choice_instance("On a table, there are five " + c.noun + "s: " + listed + "." +
                                     story + " Which " + c.noun + " is the smallest?",
                                 choices, "The " + by_rank[0] + " is the smallest.");
    f.instance.metadata["objects"] = names;
    f.expected = "The " + by_rank[0] + " is the smallest.";

    // Scripted translations: the problem becomes a comparison chain, each
    // candidate a position statement.
    std::string chain;
    for (size_t r = 0; r + 1 < n; ++r) {
      if (r) chain += "\n";
      chain += by_rank[r] + "<" + by_rank[r + 1];
    }
    auto translation_prompt = [&](const std::string& question) {
      think::PromptRecipe recipe{think::RecipeKind::kTranslation,
                                 {{"demonstration", demo}, {"question", question}},
                                 0};
      return think::build_prompt(recipe);
    };
    f.generations.emplace_back(translation_prompt(f.instance.input), chain);
    for (size_t i = 0; i < n; ++i) {
      f.generations.emplace_back(translation_prompt(choices[i]), names[i] + "=1");
    }
    f.rule = [](const std::string&, const std::string&) { return kHigh; };  // unused
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> translation_qa_fixtures() {
  struct Case {
    std::string country_en, capital_en, country_fa, capital_fa;
  };
  const std::vector<Case> cases = {
      {"France", "Paris", "فرانسه", "پاریس"},
      {"Germany", "Berlin", "آلمان", "برلین"},
      {"Italy", "Rome", "ایتالیا", "رم"},
      {"Spain", "Madrid", "اسپانیا", "مادرید"},
      {"England", "London", "انگلستان", "لندن"},
      {"Japan", "Tokyo", "ژاپن", "توکیو"},
      {"Egypt", "Cairo", "مصر", "قاهره"},
      {"Russia", "Moscow", "روسیه", "مسکو"},
      {"China", "Beijing", "چین", "پکن"},
      {"Greece", "Athens", "یونان", "آتن"},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    const std::string passage_fa = "پایتخت " + c.country_fa + " " + c.capital_fa + " است.";
    const std::string question_fa = "پایتخت " + c.country_fa + " چیست؟";
    const std::string passage_en = "The capital of " + c.country_en + " is " + c.capital_en + ".";
    const std::string question_en = "What is the capital of " + c.country_en + "?";

    Fixture f;
    f.instance.input = passage_fa;
    f.instance.target = c.capital_fa;
    f.instance.metadata["passage"] = passage_fa;
    f.instance.metadata["question"] = question_fa;
    f.instance.metadata["source_language"] = "Persian";
    f.expected = c.capital_fa;

    auto translation_prompt = [](const std::string& from, const std::string& text,
                                 const std::string& to) {
      think::PromptRecipe recipe{
          think::RecipeKind::kTranslation,
          {{"source_label", from}, {"source_text", text}, {"target_label", to}},
          0};
      return think::build_prompt(recipe);
    };
    f.generations.emplace_back(translation_prompt("Persian", passage_fa, "English"), passage_en);
    f.generations.emplace_back(translation_prompt("Persian", question_fa, "English"),
                               question_en);
    f.generations.emplace_back(passage_en + "\n" + question_en + "\n",
                               c.capital_en + ". It is the seat of government.");
    f.generations.emplace_back(translation_prompt("English", c.capital_en, "Persian"),
                               c.capital_fa);
    f.rule = [](const std::string&, const std::string&) { return kHigh; };  // no scoring
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

// --------------------------------------------------------------------------

struct TriviaCase {
  std::string question;
  std::vector<std::string> options;
  std::string target;
};

const std::vector<TriviaCase> kTrivia = {
    {"What color is a ripe lemon?", {"yellow", "blue", "black", "red"}, "yellow"},
    {"How many legs does a spider have?", {"eight", "four", "six", "ten"}, "eight"},
    {"Which planet is closest to the sun?", {"Mercury", "Neptune", "Earth", "Pluto"}, "Mercury"},
    {"What is frozen water called?", {"ice", "steam", "sand", "oil"}, "ice"},
    {"Which animal is known for its trunk?", {"elephant", "rabbit", "eagle", "shark"},
     "elephant"},
    {"What do bees make?", {"honey", "milk", "silk", "paper"}, "honey"},
    {"Which season follows winter?", {"spring", "autumn", "summer", "harvest"}, "spring"},
    {"What instrument has 88 keys?", {"piano", "violin", "trumpet", "drum"}, "piano"},
    {"Which ocean is the largest?", {"Pacific", "Atlantic", "Indian", "Arctic"}, "Pacific"},
    {"What gas do plants absorb?", {"carbon dioxide", "helium", "neon", "hydrogen"},
     "carbon dioxide"},
};

std::vector<Fixture> direct_fixtures() {
  std::vector<Fixture> fixtures;
  for (const auto& c : kTrivia) {
    Fixture f;
    f.instance = choice_instance(c.question, c.options, c.target);
    f.expected = c.target;
    const std::string target = c.target;
    f.rule = [target](const std::string&, const std::string& continuation) {
      return continuation == target ? kHigh : -6.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> auxiliary_knowledge_fixtures(const think::PromptLibrary& prompts) {
  struct Case {
    std::string a, b, question, target;
    std::vector<std::string> facts;  // each mentions exactly one of a/b
  };
  const std::vector<Case> cases = {
      {"car", "bicycle", "Which is heavier, a car or a bicycle?", "car",
       {"A car weighs over a thousand kilograms.", "A bicycle weighs about ten kilograms.",
        "A car has an engine.", "A bicycle is pedaled by the rider.", "A car has four wheels."}},
      {"whale", "mouse", "Which is larger, a whale or a mouse?", "whale",
       {"A whale can be thirty meters long.", "A mouse fits in a pocket.",
        "A whale lives in the ocean.", "A mouse lives in small burrows.",
        "A whale breathes through a blowhole."}},
      {"oven", "freezer", "Which is hotter inside, an oven or a freezer?", "oven",
       {"An oven bakes food at high heat.", "A freezer keeps food below zero.",
        "An oven can reach 250 degrees.", "A freezer stores ice cream.",
        "An oven browns bread."}},
      {"cheetah", "tortoise", "Which is faster, a cheetah or a tortoise?", "cheetah",
       {"A cheetah sprints over 100 kilometers per hour.", "A tortoise walks very slowly.",
        "A cheetah hunts gazelles.", "A tortoise carries a heavy shell.",
        "A cheetah has a flexible spine."}},
      {"mountain", "hill", "Which is taller, a mountain or a hill?", "mountain",
       {"A mountain can rise thousands of meters.", "A hill is a gentle rise in the land.",
        "A mountain often has snow on top.", "A hill can be climbed in an afternoon.",
        "A mountain may have glaciers."}},
      {"sun", "candle", "Which is brighter, the sun or a candle?", "sun",
       {"The sun lights the entire sky.", "A candle lights a single room.",
        "The sun is a star.", "A candle is made of wax.", "The sun powers photosynthesis."}},
      {"anchor", "feather", "Which is heavier, an anchor or a feather?", "anchor",
       {"An anchor holds a ship in place.", "A feather drifts on the wind.",
        "An anchor is cast from iron.", "A feather weighs almost nothing.",
        "An anchor sinks immediately."}},
      {"desert", "rainforest", "Which is drier, a desert or a rainforest?", "desert",
       {"A desert gets almost no rain.", "A rainforest is wet all year.",
        "A desert has sand dunes.", "A rainforest has a dense canopy.",
        "A desert cools sharply at night."}},
      {"marathon", "sprint", "Which is longer, a marathon or a sprint?", "marathon",
       {"A marathon covers more than forty kilometers.", "A sprint is over in seconds.",
        "A marathon takes hours to finish.", "A sprint is run at top speed.",
        "A marathon tests endurance."}},
      {"library", "concert", "Which is quieter, a library or a concert?", "library",
       {"A library asks visitors to whisper.", "A concert fills a hall with music.",
        "A library shelves thousands of books.", "A concert has loud speakers.",
        "A library has silent reading rooms."}},
  };
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    f.instance = choice_instance(c.question, {c.a, c.b}, c.target);
    f.instance.metadata["words"] = {c.a, c.b};
    f.expected = c.target;

    think::PromptRecipe recipe{think::RecipeKind::kListDifferences,
                               {{"a", c.a}, {"b", c.b}},
                               5};
    recipe.text["demonstration"] = prompts.get("list_differences_demo");
    f.generations.emplace_back(think::build_prompt(recipe), join_numbered_tail(c.facts, 1));

    const std::string target = c.target;
    f.rule = [target](const std::string&, const std::string& continuation) {
      return continuation == target ? kHigh : -6.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<Fixture> chain_of_thought_fixtures(const think::PromptLibrary& prompts) {
  struct Case {
    std::string query, category;
    std::vector<std::string> options;
    std::string target;
  };
  const std::vector<Case> cases = {
      {"oak", "tree", {"forest", "teacup", "anchor", "pillow"}, "forest"},
      {"trout", "fish", {"river", "desert", "attic", "sidewalk"}, "river"},
      {"violin", "instrument", {"orchestra", "bakery", "glacier", "garage"}, "orchestra"},
      {"tulip", "flower", {"garden", "furnace", "harbor", "stadium"}, "garden"},
      {"falcon", "bird", {"sky", "cellar", "subway", "pantry"}, "sky"},
      {"cactus", "plant", {"desert", "lagoon", "ballroom", "tunnel"}, "desert"},
      {"salmon", "fish", {"stream", "quarry", "rooftop", "meadow"}, "stream"},
      {"maple", "tree", {"woodland", "seabed", "runway", "kitchen"}, "woodland"},
      {"sparrow", "bird", {"hedge", "volcano", "icebox", "vault"}, "hedge"},
      {"fern", "plant", {"undergrowth", "skyline", "casino", "dockyard"}, "undergrowth"},
  };
  const std::string demo = prompts.get("cot_phrase_relatedness");
  std::vector<Fixture> fixtures;
  for (const auto& c : cases) {
    Fixture f;
    std::string input = "Input: " + c.query;
    for (const auto& o : c.options) input += "\nOption: " + o;
    f.instance = choice_instance(input, c.options, c.target);
    f.instance.metadata["cot_demo"] = "cot_phrase_relatedness";
    f.expected = c.target;

    const std::string prompt = demo + "\n\n" + input + "\n";
    const std::string rationale =
        "A " + c.query + " is a " + c.category + ", and a " + c.category +
        " is usually found in a " + c.target + ". Therefore, the answer is " + c.target + ".";
    f.generations.emplace_back(prompt, rationale);

    const std::string target = c.target;
    f.rule = [target](const std::string&, const std::string& continuation) {
      return continuation == " " + target ? kHigh : -6.0;
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate bundled task fixtures and scripted mock tables"};
  std::string out_dir = "data";
  std::string prompts_dir = "prompts";
  app.add_option("--out-dir", out_dir, "destination directory");
  app.add_option("--prompts-dir", prompts_dir, "prompt data files");
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    think::PromptLibrary prompts(prompts_dir);
    const fs::path out(out_dir);

    emit_task("odd-one-out", odd_one_out_fixtures(), prompts, out);
    emit_task("odd-one-out-mv", odd_one_out_fact_fixtures(prompts), prompts, out);
    emit_task("odd-one-out-lvm", odd_one_out_fact_fixtures(prompts), prompts, out);
    emit_task("phrase-relatedness", phrase_relatedness_fixtures(), prompts, out);
    emit_task("codenames", codenames_fixtures(), prompts, out);
    emit_task("invented-words", invented_words_fixtures(), prompts, out);
    emit_task("novel-concepts", novel_concepts_fixtures(), prompts, out);
    emit_task("sports", sports_fixtures(prompts), prompts, out);
    emit_task("known-unknowns", known_unknowns_fixtures(), prompts, out);
    emit_task("misconceptions", misconceptions_fixtures(), prompts, out);
    emit_task("emoji-movie", emoji_movie_fixtures(), prompts, out);
    emit_task("language-id", language_id_fixtures(), prompts, out);
    emit_task("code-line", code_line_fixtures(), prompts, out);
    emit_task("logical-deduction", logical_deduction_fixtures(prompts), prompts, out);
    emit_task("translation-qa", translation_qa_fixtures(), prompts, out);
    emit_task("direct", direct_fixtures(), prompts, out);
    emit_task("auxiliary-knowledge", auxiliary_knowledge_fixtures(prompts), prompts, out);
    emit_task("chain-of-thought", chain_of_thought_fixtures(prompts), prompts, out);
  } catch (const std::exception& e) {
    std::cerr << "fixture generation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
