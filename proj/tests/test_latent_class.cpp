#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "thinksum/latent_class.hpp"

using namespace thinksum;
using namespace thinksum::sum;

namespace {

// 6x6 items-by-facts matrix with two planted blocks: items {0,1,2} pair
// with facts {0,1,2}, items {3,4,5} with facts {3,4,5}. In-block log-scores
// sit near -1, cross-block near -6, with seeded Gaussian jitter.
ScoreMatrix planted_blocks(uint64_t seed) {
  std::vector<std::string> items = {"i0", "i1", "i2", "i3", "i4", "i5"};
  std::vector<std::string> facts = {"f0", "f1", "f2", "f3", "f4", "f5"};
  ScoreMatrix m(items, facts);
  std::mt19937_64 rng(1000 + seed);
  std::normal_distribution<double> jitter(0.0, 0.25);
  for (size_t i = 0; i < 6; ++i) {
    for (size_t f = 0; f < 6; ++f) {
      const bool in_block = (i < 3) == (f < 3);
      m.at(i, f) = (in_block ? -1.0 : -6.0) + jitter(rng);
    }
  }
  return m;
}

bool recovers_partition(const LatentClassModel& model) {
  const size_t a = model.item_class(0);
  if (model.item_class(1) != a || model.item_class(2) != a) return false;
  const size_t b = model.item_class(3);
  if (b == a) return false;
  return model.item_class(4) == b && model.item_class(5) == b;
}

void check_normalized(const LatentClassModel& model) {
  double prior = 0.0;
  for (double p : model.class_prior) prior += p;
  CHECK(std::abs(prior - 1.0) <= 1e-9);
  for (size_t c = 0; c < model.n_classes(); ++c) {
    double sum_i = 0.0;
    for (size_t i = 0; i < model.n_items(); ++i) sum_i += model.p_item(i, c);
    CHECK(std::abs(sum_i - 1.0) <= 1e-9);
    double sum_f = 0.0;
    for (size_t f = 0; f < model.n_facts(); ++f) sum_f += model.p_fact(f, c);
    CHECK(std::abs(sum_f - 1.0) <= 1e-9);
  }
}

void check_monotone(const std::vector<double>& trace) {
  for (size_t t = 1; t < trace.size(); ++t) {
    CHECK(trace[t] >= trace[t - 1] - 1e-9);
  }
}

}  // namespace

TEST_CASE("em_fit recovers planted block structure across 20 seeds") {
  int recovered = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const LatentClassModel model = em_fit(planted_blocks(seed), 2, 200, seed);
    REQUIRE(model.log_likelihood_trace.size() == 200);
    REQUIRE(model.expected_complete_ll_trace.size() == 200);
    CHECK(!model.degenerate);
    check_normalized(model);
    check_monotone(model.log_likelihood_trace);
    check_monotone(model.expected_complete_ll_trace);
    if (recovers_partition(model)) ++recovered;
  }
  CHECK(recovered >= 19);
}

TEST_CASE("em_fit is deterministic for a fixed seed") {
  const ScoreMatrix m = planted_blocks(3);
  const LatentClassModel a = em_fit(m, 2, 50, 7);
  const LatentClassModel b = em_fit(m, 2, 50, 7);
  CHECK(a.item_given_class == b.item_given_class);
  CHECK(a.fact_given_class == b.fact_given_class);
  CHECK(a.class_prior == b.class_prior);
  CHECK(a.log_likelihood_trace == b.log_likelihood_trace);
}

TEST_CASE("em_fit flags an all-equal joint as degenerate") {
  ScoreMatrix m({"i0", "i1"}, {"f0", "f1"});
  for (double& v : m.values) v = -2.0;
  const LatentClassModel model = em_fit(m, 2, 20, 0);
  CHECK(model.degenerate);
  check_normalized(model);
}

TEST_CASE("em_fit validates its input") {
  ScoreMatrix tiny({"i0"}, {"f0", "f1"});
  CHECK_THROWS_AS(em_fit(tiny, 2, 10, 0), std::invalid_argument);

  ScoreMatrix bad({"i0", "i1"}, {"f0", "f1"});
  bad.at(0, 0) = kNegInf;
  CHECK_THROWS_AS(em_fit(bad, 2, 10, 0), std::invalid_argument);

  ScoreMatrix ok({"i0", "i1"}, {"f0", "f1"});
  ok.at(0, 0) = -1.0;
  CHECK_THROWS_AS(em_fit(ok, 1, 10, 0), std::invalid_argument);
}

TEST_CASE("lvm_odd_score matches a plain-arithmetic oracle") {
  const LatentClassModel model = em_fit(planted_blocks(0), 2, 200, 0);
  const std::vector<std::string> words = {"i0", "i1", "i2", "i3", "i4", "i5"};
  for (size_t i = 0; i < words.size(); ++i) {
    std::vector<std::string> others;
    for (size_t j = 0; j < words.size(); ++j) {
      if (j != i) others.push_back(words[j]);
    }
    // Oracle: direct product sum over ordered class pairs, long double.
    long double want = 0.0L;
    for (size_t c = 0; c < 2; ++c) {
      for (size_t cp = 0; cp < 2; ++cp) {
        if (cp == c) continue;
        long double term = static_cast<long double>(model.p_item(i, c)) *
                           static_cast<long double>(model.class_prior[c]);
        for (size_t j = 0; j < words.size(); ++j) {
          if (j == i) continue;
          term *= static_cast<long double>(model.p_item(j, cp)) *
                  static_cast<long double>(model.class_prior[cp]);
        }
        want += term;
      }
    }
    const double got = lvm_odd_score(model, words[i], others);
    CHECK(static_cast<double>(fabsl(got - want)) <=
          1e-12 * static_cast<double>(std::max(want, 1e-300L)));
  }
}

TEST_CASE("lvm_odd_score singles out the planted odd item") {
  // Five items share one block; the sixth gets its own facts.
  std::vector<std::string> items = {"a", "b", "c", "d", "e", "odd"};
  std::vector<std::string> facts = {"f0", "f1", "f2", "f3"};
  ScoreMatrix m(items, facts);
  for (size_t i = 0; i < 6; ++i) {
    for (size_t f = 0; f < 4; ++f) {
      const bool group_fact = f < 2;
      const bool group_item = i < 5;
      m.at(i, f) = (group_item == group_fact) ? -1.0 - 0.01 * static_cast<double>(i + f)
                                              : -7.0 - 0.01 * static_cast<double>(i);
    }
  }
  const LatentClassModel model = em_fit(m, 2, 200, 1);
  double best = -1.0;
  std::string best_item;
  for (const auto& item : items) {
    std::vector<std::string> others;
    for (const auto& other : items) {
      if (other != item) others.push_back(other);
    }
    const double s = lvm_odd_score(model, item, others);
    if (s > best) {
      best = s;
      best_item = item;
    }
  }
  CHECK(best_item == "odd");
}

TEST_CASE("lvm_odd_score rejects the item among the others") {
  const LatentClassModel model = em_fit(planted_blocks(0), 2, 10, 0);
  CHECK_THROWS_AS(lvm_odd_score(model, "i0", {"i0", "i1"}), std::invalid_argument);
  CHECK_THROWS_AS(lvm_odd_score(model, "nope", {"i1"}), std::invalid_argument);
}
