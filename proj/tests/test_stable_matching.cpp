// Copyright 2026 The medlat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "medlat/stable_matching.hpp"
#include "oracles.hpp"

namespace medlat {
namespace {

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::PostconditionViolated;
}

// Cyclic preferences. The stable matchings form the chain
// (0,0,0) < (1,1,1) < (2,2,2): men's first, second and third choices.
constexpr const char* kLatin3 =
    "smp 3\n"
    "man 0: 0 1 2\n"
    "man 1: 1 2 0\n"
    "man 2: 2 0 1\n"
    "woman 0: 1 2 0\n"
    "woman 1: 2 0 1\n"
    "woman 2: 0 1 2\n";

TEST(Instance, ParseValidatesLists) {
  const auto one = parse_instance("smp 1\nman 0: 0\nwoman 0: 0\n");
  EXPECT_EQ(one.n(), 1u);
  EXPECT_EQ(error_kind_of([] { parse_instance("smp 2\nman 0: 0 0\nman 1: 0 1\nwoman 0: 0 1\nwoman 1: 0 1\n"); }),
            ErrorKind::NotAPermutation);
  EXPECT_EQ(error_kind_of([] { parse_instance("smp 2\nman 0: 0 1\nman 1: 0 1\nwoman 0: 0 1\n"); }),
            ErrorKind::SizeMismatch);
  EXPECT_EQ(error_kind_of([] { parse_instance("smp 2\nman 0: 0 1\nman 1: 0\nwoman 0: 0 1\nwoman 1: 0 1\n"); }),
            ErrorKind::SizeMismatch);
  EXPECT_EQ(error_kind_of([] { parse_instance("man 0: 0\n"); }), ErrorKind::MalformedFile);
  EXPECT_EQ(error_kind_of([] { parse_instance("smp 1\nman 1: 0\nwoman 0: 0\n"); }),
            ErrorKind::MalformedFile);
  EXPECT_EQ(error_kind_of([] { parse_instance("smp 1\nman 0 0\nwoman 0: 0\n"); }),
            ErrorKind::MalformedFile);
}

TEST(Instance, RoundTrip) {
  const auto inst = parse_instance(kLatin3);
  EXPECT_EQ(serialize_instance(inst), kLatin3);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto r = oracle::random_instance(rng, 1 + t % 8);
    ASSERT_EQ(parse_instance(serialize_instance(r)), r);
  }
}

TEST(Assignment, WomanOfAndInverse) {
  const auto inst = parse_instance(kLatin3);
  const AssignmentVector top{0, 0, 0};
  EXPECT_EQ(woman_of(inst, top, 1), 1);
  EXPECT_EQ(assignment_to_matching(inst, top),
            (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}}));
  // Men 0 and 2 both get woman 0.
  const auto clash = assignment_to_matching(inst, AssignmentVector{0, 0, 1});
  EXPECT_EQ(clash[0].second, clash[2].second);
  EXPECT_EQ(error_kind_of([&] { woman_of(inst, AssignmentVector{0, 3, 0}, 0); }),
            ErrorKind::RankOutOfRange);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto r = oracle::random_instance(rng, 5);
    const auto g = oracle::random_vector<AssignmentVector>(rng, 5, 4);
    std::vector<int> wives;
    for (const auto& [m, w] : assignment_to_matching(r, g)) wives.push_back(w);
    ASSERT_EQ(assignment_from_wives(r, wives), g);
  }
}

TEST(Stability, Basics) {
  const auto one = parse_instance("smp 1\nman 0: 0\nwoman 0: 0\n");
  EXPECT_TRUE(stability_report(one, AssignmentVector{0}).stable);

  const auto inst = parse_instance(kLatin3);
  const auto clash = stability_report(inst, AssignmentVector{0, 0, 1});
  EXPECT_FALSE(clash.is_matching);
  EXPECT_FALSE(clash.stable);
  EXPECT_TRUE(clash.blocking.empty());

  // Every assignment of the 3x3 box against the oracle.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const AssignmentVector g{a, b, c};
        const auto rep = stability_report(inst, g);
        ASSERT_EQ(rep.stable, rep.is_matching && rep.blocking.empty());
        if (rep.is_matching) ASSERT_EQ(rep.stable, oracle::assignment_is_stable(inst, g));
      }
}

TEST(Stability, BlockingPairsListed) {
  const auto inst = parse_instance("smp 2\nman 0: 0 1\nman 1: 0 1\nwoman 0: 0 1\nwoman 1: 0 1\n");
  const auto rep = stability_report(inst, AssignmentVector{1, 0});
  EXPECT_TRUE(rep.is_matching);
  EXPECT_FALSE(rep.stable);
  EXPECT_EQ(rep.blocking, (std::vector<std::pair<int, int>>{{0, 0}}));
}

TEST(GaleShapley, OutputsAreStableAtScale) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 150; ++t) {
    const auto inst = oracle::random_instance(rng, 1 + t % 30);
    ASSERT_TRUE(stability_report(inst, gale_shapley(inst, Side::Men)).stable);
    ASSERT_TRUE(stability_report(inst, gale_shapley(inst, Side::Women)).stable);
    ASSERT_TRUE(oracle::assignment_is_stable(inst, gale_shapley(inst, Side::Men)));
  }
  const auto one = parse_instance("smp 1\nman 0: 0\nwoman 0: 0\n");
  EXPECT_EQ(gale_shapley(one), (AssignmentVector{0}));
}

TEST(GaleShapley, ExtremalAgainstEnumeration) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 120; ++t) {
    const auto inst = oracle::random_instance(rng, 1 + t % 7);
    const auto stable = oracle::stable_by_permutations(inst);
    ASSERT_EQ(gale_shapley(inst, Side::Men), oracle::componentwise_min(stable));
    ASSERT_EQ(gale_shapley(inst, Side::Women), oracle::componentwise_max(stable));
  }
}

TEST(GaleShapley, SerialDictatorshipIsUnique) {
  // Everyone shares one list on each side.
  const auto inst = parse_instance(
      "smp 4\n"
      "man 0: 2 0 3 1\nman 1: 2 0 3 1\nman 2: 2 0 3 1\nman 3: 2 0 3 1\n"
      "woman 0: 3 1 0 2\nwoman 1: 3 1 0 2\nwoman 2: 3 1 0 2\nwoman 3: 3 1 0 2\n");
  const auto stable = oracle::stable_by_permutations(inst);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(gale_shapley(inst, Side::Men), stable.front());
  EXPECT_EQ(gale_shapley(inst, Side::Women), stable.front());
}

TEST(Enumeration, MatchesPermutationOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 150; ++t) {
    const auto inst = oracle::random_instance(rng, 1 + t % 7);
    const auto stable = all_stable_matchings(inst);
    ASSERT_EQ(stable, oracle::stable_by_permutations(inst));
    for (const auto& x : stable) {
      for (const auto& y : stable) {
        ASSERT_TRUE(is_stable(inst, meet(x, y)));
        ASSERT_TRUE(is_stable(inst, join(x, y)));
      }
    }
  }
}

TEST(Enumeration, EdgeCases) {
  EXPECT_EQ(all_stable_matchings(parse_instance("smp 1\nman 0: 0\nwoman 0: 0\n")).size(), 1u);
  // Mutual first choices: man i and woman i rank each other first.
  const auto mutual = parse_instance(
      "smp 3\nman 0: 0 1 2\nman 1: 1 2 0\nman 2: 2 0 1\n"
      "woman 0: 0 2 1\nwoman 1: 1 0 2\nwoman 2: 2 1 0\n");
  EXPECT_EQ(all_stable_matchings(mutual), (std::vector<AssignmentVector>{{0, 0, 0}}));
  const auto big = parse_instance(serialize_instance([] {
    std::mt19937_64 rng(1);
    return oracle::random_instance(rng, 9);
  }()));
  EXPECT_EQ(error_kind_of([&] { all_stable_matchings(big); }), ErrorKind::TooLarge);

  const auto latin = parse_instance(kLatin3);
  EXPECT_EQ(all_stable_matchings(latin),
            (std::vector<AssignmentVector>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}));
}

TEST(MedianStable, Basics) {
  const auto inst = parse_instance(kLatin3);
  const AssignmentVector g{1, 1, 1};
  EXPECT_EQ(median_stable(inst, {g}, 1), g);
  const auto man_opt = gale_shapley(inst, Side::Men);
  const auto woman_opt = gale_shapley(inst, Side::Women);
  EXPECT_EQ(median_stable(inst, {man_opt, woman_opt}, 1), man_opt);
  EXPECT_EQ(median_stable(inst, {woman_opt, man_opt}, 2), woman_opt);
  const std::vector<AssignmentVector> all{{0, 0, 0}, {2, 2, 2}, {1, 1, 1}};
  EXPECT_EQ(median_stable(inst, all, 2), (AssignmentVector{1, 1, 1}));

  EXPECT_EQ(error_kind_of([&] { median_stable(inst, {g}, 2); }), ErrorKind::JOutOfRange);
  EXPECT_EQ(error_kind_of([&] { median_stable(inst, {g}, 0); }), ErrorKind::JOutOfRange);
  EXPECT_EQ(error_kind_of([&] { median_stable(inst, {AssignmentVector{0, 1, 0}}, 1); }),
            ErrorKind::NotStableInput);
  EXPECT_EQ(error_kind_of([&] { median_stable(inst, {}, 1); }), ErrorKind::EmptyInput);
}

TEST(MedianStable, RandomSubsetsStayInEnumeratedSet) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 80; ++t) {
    const auto inst = oracle::random_instance(rng, 3 + t % 5);
    const auto stable = all_stable_matchings(inst);
    std::uniform_int_distribution<std::size_t> pick(0, stable.size() - 1);
    for (int s = 0; s < 10; ++s) {
      std::vector<AssignmentVector> m(3 + rng() % 3);
      for (auto& x : m) x = stable[pick(rng)];
      for (std::size_t j = 1; j <= m.size(); ++j) {
        const auto g = median_stable(inst, m, j);
        ASSERT_TRUE(oracle::assignment_is_stable(inst, g));
        ASSERT_TRUE(std::binary_search(stable.begin(), stable.end(), g));
      }
    }
  }
}

TEST(Predicates, VacuousCases) {
  std::mt19937_64 rng(51);
  const auto inst = oracle::random_instance(rng, 5);
  const auto any = oracle::random_vector<AssignmentVector>(rng, 5, 4);
  EXPECT_TRUE(regret_at_most(inst, 2, 4)(any));
  EXPECT_TRUE(regret_le(inst, 3, 3)(any));
  EXPECT_EQ(error_kind_of([&] { regret_le(inst, 0, 5); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(error_kind_of([&] { forbids(inst, 5, 0); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(error_kind_of([&] { forbids(inst, 0, 7); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(error_kind_of([&] { regret_at_most(inst, 9, 0); }), ErrorKind::IndexOutOfRange);
}

TEST(Predicates, Semantics) {
  const auto inst = parse_instance(kLatin3);
  const auto f = forbids(inst, 0, 1);  // woman 1 is man 0's rank 1
  EXPECT_TRUE(f(AssignmentVector{0, 0, 0}));
  EXPECT_FALSE(f(AssignmentVector{1, 0, 0}));
  const auto both = regret_le(inst, 0, 1) && regret_at_most(inst, 2, 1);
  EXPECT_TRUE(both(AssignmentVector{0, 1, 1}));
  EXPECT_FALSE(both(AssignmentVector{2, 1, 1}));
  EXPECT_FALSE(both(AssignmentVector{0, 1, 2}));
  EXPECT_EQ(both.description(), "regret_le(0,1) && regret_at_most(2,1)");
}

TEST(Constrained, FilteredSetsAreGatedBeforeMedians) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + t % 5;
    const auto inst = oracle::random_instance(rng, n);
    const auto pred = t % 2 == 0 ? regret_le(inst, rng() % n, rng() % n)
                                 : forbids(inst, rng() % n, rng() % n);
    const auto report = check_constrained(inst, pred, 5, 100, t);
    if (report.regularity.regular) {
      ASSERT_TRUE(report.theorem.has_value());
      ASSERT_TRUE(report.theorem->passed());
    } else {
      ASSERT_FALSE(report.theorem.has_value());
    }
  }
}

TEST(Constrained, NonRegularPredicateIsRefused) {
  const auto inst = parse_instance(kLatin3);
  // Dropping the middle of a chain keeps it closed.
  const Predicate extremes("extremes", [](const AssignmentVector& g) { return g[0] != 1; });
  EXPECT_TRUE(check_constrained(inst, extremes, 3, 10).regularity.regular);

  // Keeping exactly two incomparable stable matchings loses their meet.
  std::mt19937_64 rng(3);
  bool saw_gate = false;
  for (int t = 0; t < 500 && !saw_gate; ++t) {
    const auto r = oracle::random_instance(rng, 6);
    const auto stable = all_stable_matchings(r);
    if (stable.size() < 4) continue;
    for (std::size_t a = 0; a < stable.size() && !saw_gate; ++a) {
      for (std::size_t b = a + 1; b < stable.size() && !saw_gate; ++b) {
        if (leq(stable[a], stable[b]) || leq(stable[b], stable[a])) continue;
        const auto x = stable[a], y = stable[b];
        const Predicate pair("pair", [x, y](const AssignmentVector& g) { return g == x || g == y; });
        const auto report = check_constrained(r, pair, 3, 10);
        ASSERT_TRUE(report.gated());
        ASSERT_FALSE(report.theorem.has_value());
        EXPECT_EQ(error_kind_of([&] { constrained_median(r, pair, {x, y}, 1); }),
                  ErrorKind::NotRegular);
        saw_gate = true;
      }
    }
  }
  EXPECT_TRUE(saw_gate);
}

TEST(Constrained, MedianOfFilteredSet) {
  const auto inst = parse_instance(kLatin3);
  const auto pred = regret_at_most(inst, 0, 1);
  EXPECT_EQ(constrained_median(inst, pred, {{0, 0, 0}, {1, 1, 1}}, 2), (AssignmentVector{1, 1, 1}));
  EXPECT_EQ(error_kind_of([&] { constrained_median(inst, pred, {{2, 2, 2}}, 1); }),
            ErrorKind::NotStableInput);
}

}  // namespace
}  // namespace medlat
