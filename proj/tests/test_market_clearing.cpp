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

#include "medlat/market_clearing.hpp"
#include "oracles.hpp"

namespace medlat {
namespace {

using Rows = std::vector<std::vector<int>>;

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

TEST(Market, ConstructionAndParsing) {
  const MarketInstance m({{2, 1}, {1, 2}});
  EXPECT_EQ(m.price_cap(), 2);
  EXPECT_EQ(parse_market("market 2\nbuyer 0: 2 1\nbuyer 1: 1 2\n"), m);
  const auto capped = parse_market("market 2 5\nbuyer 0: 2 1\nbuyer 1: 1 2\n");
  EXPECT_EQ(capped.price_cap(), 5);
  EXPECT_EQ(serialize_market(capped), "market 2 5\nbuyer 0: 2 1\nbuyer 1: 1 2\n");
  EXPECT_EQ(parse_market(serialize_market(m)), m);

  EXPECT_EQ(error_kind_of([] { MarketInstance({{1, 2}, {1}}); }), ErrorKind::SizeMismatch);
  EXPECT_EQ(error_kind_of([] { MarketInstance(Rows{{-1}}); }), ErrorKind::InvalidValuation);
  EXPECT_EQ(error_kind_of([] { parse_market("market 2\nbuyer 0: 1 1\n"); }),
            ErrorKind::SizeMismatch);
  EXPECT_EQ(error_kind_of([] { parse_market("buyer 0: 1\n"); }), ErrorKind::MalformedFile);
  EXPECT_EQ(error_kind_of([] { parse_market("market 1\nbuyer 0: x\n"); }),
            ErrorKind::MalformedFile);
  EXPECT_EQ(error_kind_of([] { parse_market("market 1 2 3\nbuyer 0: 1\n"); }),
            ErrorKind::MalformedFile);
}

TEST(DemandGraph, ArgmaxAndShiftInvariance) {
  const MarketInstance m({{2, 1}, {1, 2}});
  EXPECT_EQ(demand_graph(m, PriceVector{0, 0}).demanded,
            (Rows{{0}, {1}}));
  const MarketInstance tie({{3, 3, 1}, {0, 4, 4}, {2, 2, 2}}, 6);
  EXPECT_EQ(demand_graph(tie, PriceVector{0, 0, 0}).demanded,
            (Rows{{0, 1}, {1, 2}, {0, 1, 2}}));
  // Negative payoffs still demand the argmax.
  EXPECT_EQ(demand_graph(tie, PriceVector{6, 6, 5}).demanded[0], (std::vector<int>{0, 1}));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto inst = oracle::random_market(rng, 2 + t % 3, 4, 6);
    auto p = oracle::random_vector<PriceVector>(rng, inst.n(), 3);
    auto shifted = p;
    for (auto& x : shifted) x += 3;
    ASSERT_EQ(demand_graph(inst, p), demand_graph(inst, shifted));
    for (std::size_t i = 0; i < inst.n(); ++i) ASSERT_FALSE(demand_graph(inst, p).demanded[i].empty());
  }
  EXPECT_EQ(error_kind_of([&] { demand_graph(m, PriceVector{0, 3}); }), ErrorKind::OutOfBounds);
  EXPECT_EQ(error_kind_of([&] { demand_graph(m, PriceVector{0}); }), ErrorKind::SizeMismatch);
}

TEST(Clearing, SmallCases) {
  const MarketInstance single(Rows{{3}});
  for (int p = 0; p <= 3; ++p) EXPECT_TRUE(is_market_clearing(single, PriceVector{p}));
  EXPECT_TRUE(is_market_clearing(MarketInstance({{2, 1}, {1, 2}}), PriceVector{0, 0}));
  EXPECT_FALSE(is_market_clearing(MarketInstance({{2, 1}, {2, 1}}), PriceVector{0, 0}));
  EXPECT_EQ(supporting_matching(MarketInstance({{2, 1}, {1, 2}}), PriceVector{0, 0}),
            (std::vector<int>{0, 1}));
}

TEST(Clearing, AgreesWithPermutationOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto inst = oracle::random_market(rng, 1 + t % 4, 4, 6);
    const auto p = oracle::random_vector<PriceVector>(rng, inst.n(), 6);
    ASSERT_EQ(is_market_clearing(inst, p), oracle::clears_by_permutations(inst, p));
  }
}

TEST(MinClearing, SmallCases) {
  EXPECT_EQ(min_clearing_prices(MarketInstance(Rows{{3}})), (PriceVector{0}));
  // Both buyers prefer item 0 by one unit: item 0 must cost 1 more.
  const MarketInstance contested({{2, 1}, {2, 1}});
  EXPECT_EQ(min_clearing_prices(contested), (PriceVector{1, 0}));
  const auto all = enumerate_clearing_vectors(contested);
  EXPECT_EQ(oracle::componentwise_min(all), (PriceVector{1, 0}));
}

TEST(MinClearing, MatchesEnumerationOracle) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 400; ++t) {
    const auto inst = oracle::random_market(rng, 2 + t % 3, 4, 6);
    const auto all = enumerate_clearing_vectors(inst);
    ASSERT_FALSE(all.empty());
    const auto auction = run_ascending_auction(inst);
    ASSERT_EQ(auction.prices, oracle::componentwise_min(all)) << serialize_market(inst);
    ASSERT_TRUE(is_market_clearing(inst, auction.prices));
    const std::size_t n = inst.n();
    ASSERT_LE(auction.rounds, n * n * static_cast<std::size_t>(inst.price_cap() + 1));
  }
}

TEST(MinClearing, ExplicitCapBelowMinimumIsRejected) {
  const MarketInstance tight({{4, 0}, {4, 0}}, 2);
  EXPECT_EQ(error_kind_of([&] { min_clearing_prices(tight); }), ErrorKind::OutOfBounds);
}

TEST(Enumeration, BasicsAndBounds) {
  EXPECT_EQ(enumerate_clearing_vectors(MarketInstance(Rows{{2}})),
            (std::vector<PriceVector>{{0}, {1}, {2}}));
  const MarketInstance big(std::vector<std::vector<int>>(5, std::vector<int>(5, 1)));
  EXPECT_EQ(error_kind_of([&] { enumerate_clearing_vectors(big); }), ErrorKind::TooLarge);
  const MarketInstance rich(Rows{{9}});
  EXPECT_EQ(error_kind_of([&] { enumerate_clearing_vectors(rich); }), ErrorKind::TooLarge);
}

TEST(Enumeration, ClosedUnderMinMaxAndAgreesWithOracle) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 120; ++t) {
    const auto inst = oracle::random_market(rng, 2 + t % 3, 4, 6);
    const auto all = enumerate_clearing_vectors(inst);
    ASSERT_TRUE(std::is_sorted(all.begin(), all.end()));
    ASSERT_TRUE(check_regular(all).regular);
    for (const auto& p : all) ASSERT_TRUE(oracle::clears_by_permutations(inst, p));
  }
}

TEST(MedianClearing, Basics) {
  const MarketInstance inst({{3, 1, 0}, {1, 3, 0}, {0, 1, 3}}, 6);
  const auto pmin = min_clearing_prices(inst);
  EXPECT_EQ(median_clearing(inst, {pmin}, 1), pmin);

  // Uniform shifts stay clearing; medians are the sorted shifts.
  std::vector<PriceVector> shifts;
  for (int c : {2, 0, 1}) {
    auto p = pmin;
    for (auto& x : p) x += c;
    shifts.push_back(p);
  }
  for (std::size_t j = 1; j <= 3; ++j) {
    auto expect = pmin;
    for (auto& x : expect) x += static_cast<int>(j) - 1;
    EXPECT_EQ(median_clearing(inst, shifts, j), expect);
  }
  EXPECT_EQ(error_kind_of([&] { median_clearing(inst, shifts, 4); }), ErrorKind::JOutOfRange);
  const MarketInstance contested({{2, 1}, {2, 1}});
  EXPECT_EQ(error_kind_of([&] { median_clearing(contested, {PriceVector{0, 0}}, 1); }),
            ErrorKind::NotClearingInput);
}

TEST(MedianClearing, RandomSubsets) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_market(rng, 2 + t % 3, 4, 6);
    const auto all = enumerate_clearing_vectors(inst);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int s = 0; s < 10; ++s) {
      std::vector<PriceVector> family(1 + rng() % 5);
      for (auto& p : family) p = all[pick(rng)];
      for (std::size_t j = 1; j <= family.size(); ++j) {
        ASSERT_TRUE(oracle::clears_by_permutations(inst, median_clearing(inst, family, j)));
      }
    }
  }
}

TEST(Bipartite, ConstrictedSetFromAlternatingReach) {
  // Buyers 0 and 1 both want only item 0.
  BipartiteGraph g(3, 3);
  g.add_edge(0, 0);
  g.add_edge(1, 0);
  g.add_edge(2, 1);
  g.add_edge(2, 2);
  const auto m = maximum_matching(g);
  EXPECT_EQ(m.size, 2u);
  const auto reach = alternating_reach(g, m);
  EXPECT_EQ(reach.left, (std::vector<bool>{true, true, false}));
  EXPECT_EQ(reach.right, (std::vector<bool>{true, false, false}));
}

TEST(Bipartite, HopcroftKarpMatchesBruteForceSize) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 7;
    BipartiteGraph g(n, n);
    std::bernoulli_distribution edge(0.3);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (edge(rng)) {
          adj[u][v] = true;
          g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
    // Largest matching over all injections of a subset of left vertices, via
    // permutations of the right side.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
      std::size_t c = 0;
      for (std::size_t u = 0; u < n; ++u) c += adj[u][static_cast<std::size_t>(perm[u])] ? 1 : 0;
      best = std::max(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto m = maximum_matching(g);
    ASSERT_EQ(m.size, best);
    for (std::size_t u = 0; u < n; ++u) {
      if (m.left_mate[u] != kUnmatched) {
        ASSERT_TRUE(adj[u][static_cast<std::size_t>(m.left_mate[u])]);
        ASSERT_EQ(m.right_mate[static_cast<std::size_t>(m.left_mate[u])], static_cast<int>(u));
      }
    }
  }
}

}  // namespace
}  // namespace medlat
