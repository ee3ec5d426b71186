#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "thinksum/constraints.hpp"
#include "thinksum/deduction.hpp"
#include "thinksum/mock_backend.hpp"

using namespace thinksum;
using namespace thinksum::sum;
using think::Comparison;
using think::Operand;
using think::Relation;

namespace {

// Brute-force reference: plain long-double sum over the same assignment
// space, probabilities multiplied directly (no log domain).
long double brute_force_sum(const think::ConstraintSet& constraints,
                            const Comparison& candidate, ExternalEvaluator& evaluator,
                            bool permutations_only) {
  const int n = static_cast<int>(constraints.object_names.size());
  long double total = 0.0L;
  AssignmentEnumerator enumerator(n, permutations_only);
  while (auto assignment = enumerator.next()) {
    long double product = 1.0L;
    for (const auto& c : constraints.constraints) {
      product *= evaluate_comparison(c, constraints.object_names, *assignment, evaluator);
    }
    product *= evaluate_comparison(candidate, constraints.object_names, *assignment, evaluator);
    total += product;
  }
  return total;
}

think::ConstraintSet two_object_chain() {
  think::ConstraintSet set;
  set.object_names = {"A", "B"};
  set.constraints = {{Operand::object("A"), Relation::kLess, Operand::object("B")}};
  return set;
}

}  // namespace

TEST_CASE("is_permutation checks range and distinctness") {
  CHECK(Assignment{{1, 2, 3}}.is_permutation());
  CHECK(Assignment{{3, 1, 2}}.is_permutation());
  CHECK(!Assignment{{1, 1, 3}}.is_permutation());
  CHECK(!Assignment{{0, 1, 2}}.is_permutation());
  CHECK(!Assignment{{1, 2, 4}}.is_permutation());
}

TEST_CASE("the enumerator streams every assignment exactly once") {
  for (int n : {2, 3, 4}) {
    std::set<std::vector<int>> seen;
    AssignmentEnumerator all(n, false);
    while (auto a = all.next()) {
      CHECK(seen.insert(a->positions).second);
      for (int p : a->positions) {
        CHECK(p >= 1);
        CHECK(p <= n);
      }
    }
    CHECK(seen.size() == static_cast<size_t>(std::pow(n, n)));

    std::set<std::vector<int>> perms;
    AssignmentEnumerator only(n, true);
    while (auto a = only.next()) {
      CHECK(a->is_permutation());
      CHECK(perms.insert(a->positions).second);
    }
    size_t factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= static_cast<size_t>(k);
    CHECK(perms.size() == factorial);
  }
}

TEST_CASE("the enumerator rejects out-of-range N") {
  CHECK_THROWS_AS(AssignmentEnumerator(1, false), std::invalid_argument);
  CHECK_THROWS_AS(AssignmentEnumerator(9, true), std::invalid_argument);
}

TEST_CASE("the external evaluator maps arithmetic truth to fixed probabilities") {
  ExternalEvaluator evaluator(0.99, 0.01);
  CHECK(evaluator.prob_true(1, Relation::kLess, 2) == 0.99);
  CHECK(evaluator.prob_true(2, Relation::kLess, 1) == 0.01);
  CHECK(evaluator.prob_true(2, Relation::kGreater, 1) == 0.99);
  CHECK(evaluator.prob_true(3, Relation::kEqual, 3) == 0.99);
  CHECK(evaluator.prob_true(3, Relation::kEqual, 4) == 0.01);
  CHECK_THROWS_AS(ExternalEvaluator(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("evaluate_comparison resolves objects and literals against the assignment") {
  ExternalEvaluator evaluator(1.0, 0.0);
  const std::vector<std::string> names = {"A", "B"};
  const Assignment a{{2, 1}};
  const Comparison a_gt_b{Operand::object("A"), Relation::kGreater, Operand::object("B")};
  CHECK(evaluate_comparison(a_gt_b, names, a, evaluator) == 1.0);
  const Comparison b_is_1{Operand::object("B"), Relation::kEqual, Operand::literal(1)};
  CHECK(evaluate_comparison(b_is_1, names, a, evaluator) == 1.0);
  const Comparison unknown{Operand::object("C"), Relation::kEqual, Operand::literal(1)};
  CHECK_THROWS_AS(evaluate_comparison(unknown, names, a, evaluator), std::invalid_argument);
}

TEST_CASE("two-object hand-derived posterior") {
  // Constraint A<B, candidates {A<B, A>B}, permutations of (1,2):
  //   cand A<B: 0.99*0.99 + 0.01*0.01 = 0.9802
  //   cand A>B: 0.99*0.01 + 0.01*0.99 = 0.0198
  const auto set = two_object_chain();
  const std::vector<Comparison> candidates = {
      {Operand::object("A"), Relation::kLess, Operand::object("B")},
      {Operand::object("A"), Relation::kGreater, Operand::object("B")},
  };
  ExternalEvaluator evaluator(0.99, 0.01);
  DeductionOptions options;
  options.permutations_only = true;
  const PosteriorVector posterior =
      deduction_candidate_posterior(set, candidates, evaluator, options);
  REQUIRE(posterior.probabilities.size() == 2);
  CHECK(posterior.probabilities[0] == doctest::Approx(0.9802).epsilon(1e-6));
  CHECK(posterior.probabilities[1] == doctest::Approx(0.0198).epsilon(1e-6));
  CHECK(posterior.labels[0] == "A<B");
}

TEST_CASE("posterior equals brute-force sums in both assignment modes") {
  std::mt19937_64 rng(51);
  const std::vector<std::string> names = {"w", "x", "y", "z"};
  std::uniform_int_distribution<size_t> pick(0, 3);
  std::uniform_int_distribution<int> rel(0, 2);
  std::uniform_int_distribution<int> lit(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    think::ConstraintSet set;
    set.object_names = names;
    for (int k = 0; k < 3; ++k) {
      Comparison c;
      c.left = Operand::object(names[pick(rng)]);
      const int r = rel(rng);
      c.relation = r == 0 ? Relation::kLess : r == 1 ? Relation::kGreater : Relation::kEqual;
      c.right = rng() % 2 ? Operand::object(names[pick(rng)]) : Operand::literal(lit(rng));
      set.constraints.push_back(c);
    }
    std::vector<Comparison> candidates;
    for (int k = 0; k < 4; ++k) {
      candidates.push_back({Operand::object(names[static_cast<size_t>(k)]), Relation::kEqual,
                            Operand::literal(lit(rng))});
    }
    ExternalEvaluator evaluator(0.99, 0.01);
    for (bool permutations_only : {false, true}) {
      DeductionOptions options;
      options.permutations_only = permutations_only;
      const PosteriorVector posterior =
          deduction_candidate_posterior(set, candidates, evaluator, options);
      long double z = 0.0L;
      std::vector<long double> want;
      for (const auto& candidate : candidates) {
        want.push_back(brute_force_sum(set, candidate, evaluator, permutations_only));
        z += want.back();
      }
      for (size_t k = 0; k < candidates.size(); ++k) {
        CHECK(std::abs(posterior.probabilities[k] - static_cast<double>(want[k] / z)) <=
              1e-9);
      }
    }
  }
}

TEST_CASE("p_false = 0 reduces to satisfying-assignment counting") {
  // With 0/1 probabilities the posterior must be proportional to the number
  // of assignments satisfying constraints plus candidate.
  const std::vector<std::string> names = {"a", "b", "c"};
  think::ConstraintSet set;
  set.object_names = names;
  set.constraints = {{Operand::object("a"), Relation::kLess, Operand::object("b")}};
  const std::vector<Comparison> candidates = {
      {Operand::object("c"), Relation::kEqual, Operand::literal(1)},
      {Operand::object("b"), Relation::kGreater, Operand::object("c")},
  };
  ExternalEvaluator evaluator(1.0, 0.0);
  const PosteriorVector posterior = deduction_candidate_posterior(set, candidates, evaluator);

  std::vector<size_t> counts(candidates.size(), 0);
  AssignmentEnumerator enumerator(3, false);
  while (auto a = enumerator.next()) {
    const auto& p = a->positions;
    if (!(p[0] < p[1])) continue;
    if (p[2] == 1) ++counts[0];
    if (p[1] > p[2]) ++counts[1];
  }
  const double total = static_cast<double>(counts[0] + counts[1]);
  CHECK(posterior.probabilities[0] ==
        doctest::Approx(static_cast<double>(counts[0]) / total).epsilon(1e-12));
  CHECK(posterior.probabilities[1] ==
        doctest::Approx(static_cast<double>(counts[1]) / total).epsilon(1e-12));
}

TEST_CASE("reversal marginalization makes chain endpoints symmetric") {
  // Chain A<B<C with endpoint candidates A=1 / C=1. Read one way the chain
  // puts A first; read the other way it puts C first. Without orientation
  // marginalization A=1 dominates; with it, relabeling A<->C maps one
  // orientation onto the other, so the two candidates tie exactly.
  think::ConstraintSet set;
  set.object_names = {"A", "B", "C"};
  set.constraints = {
      {Operand::object("A"), Relation::kLess, Operand::object("B")},
      {Operand::object("B"), Relation::kLess, Operand::object("C")},
  };
  const std::vector<Comparison> candidates = {
      {Operand::object("A"), Relation::kEqual, Operand::literal(1)},
      {Operand::object("C"), Relation::kEqual, Operand::literal(1)},
  };
  ExternalEvaluator evaluator(0.99, 0.01);

  DeductionOptions one_way;
  one_way.permutations_only = true;
  const PosteriorVector skewed =
      deduction_candidate_posterior(set, candidates, evaluator, one_way);
  CHECK(skewed.probabilities[0] > 0.9);

  DeductionOptions both_ways = one_way;
  both_ways.reversal_marginalization = true;
  const PosteriorVector balanced =
      deduction_candidate_posterior(set, candidates, evaluator, both_ways);
  CHECK(balanced.probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(balanced.probabilities[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("an empty constraint set is reported and scores candidates alone") {
  think::ConstraintSet set;
  set.object_names = {"A", "B"};
  const std::vector<Comparison> candidates = {
      {Operand::object("A"), Relation::kEqual, Operand::literal(1)},
  };
  ExternalEvaluator evaluator(0.99, 0.01);
  std::vector<std::string> warnings;
  const PosteriorVector posterior =
      deduction_candidate_posterior(set, candidates, evaluator, {}, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "empty constraint set: scoring candidates alone");
  CHECK(posterior.probabilities[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(deduction_candidate_posterior(set, {}, evaluator), std::invalid_argument);
}

TEST_CASE("the backend evaluator memoizes and normalizes true/false scores") {
  MockBackend mock;
  mock.add_score("True or false: 1<2? The answer is:", " true", -0.1);
  mock.add_score("True or false: 1<2? The answer is:", " false", -3.0);
  BackendEvaluator evaluator(mock);
  const double p = evaluator.prob_true(1, Relation::kLess, 2);
  const double expect = std::exp(-0.1) / (std::exp(-0.1) + std::exp(-3.0));
  CHECK(p == doctest::Approx(expect).epsilon(1e-12));
  CHECK(mock.calls() == 2);
  CHECK(evaluator.prob_true(1, Relation::kLess, 2) == p);
  CHECK(mock.calls() == 2);  // memoized: no further backend traffic
}
