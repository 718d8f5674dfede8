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

// Randomised end-to-end battery: stable-matching medians, market-clearing
// medians and the two median routes, each property tallied separately.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "medlat/lattice_median.hpp"
#include "medlat/market_clearing.hpp"
#include "medlat/stable_matching.hpp"

namespace medlat {

struct PropertyTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few, for the report

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++failed;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 50;          // random instances per family
  std::size_t max_n = 7;            // stable-matching size, >= 3
  std::size_t subsets_per_instance = 20;
};

struct SuiteReport {
  std::vector<PropertyTally> properties;
  std::size_t gates_triggered = 0;  // NotRegular refusals, not failures

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyTally& p) { return p.failed == 0; });
  }
};

namespace detail {

template <LatticeVector V>
bool chain_and_multiset_hold(const std::vector<V>& inputs, const std::vector<V>& medians) {
  const std::size_t dim = inputs.front().size();
  for (std::size_t r = 0; r < dim; ++r) {
    std::vector<int> a, b;
    for (const auto& m : inputs) a.push_back(m[r]);
    for (const auto& g : medians) b.push_back(g[r]);
    std::sort(a.begin(), a.end());
    if (a != b) return false;  // b must already be ascending
  }
  return true;
}

inline SMPInstance random_smp(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<int>> men(n, std::vector<int>(n)), women(n, std::vector<int>(n));
  for (auto* side : {&men, &women}) {
    for (auto& l : *side) {
      std::iota(l.begin(), l.end(), 0);
      std::shuffle(l.begin(), l.end(), rng);
    }
  }
  return SMPInstance(std::move(men), std::move(women));
}

template <LatticeVector V>
std::optional<std::pair<V, V>> incomparable_pair(const std::vector<V>& xs) {
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      if (!leq(xs[a], xs[b]) && !leq(xs[b], xs[a])) return std::pair{xs[a], xs[b]};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline SuiteReport verify_suite(const SuiteOptions& opt) {
  SuiteReport report;
  if (opt.trials == 0) return report;
  std::mt19937_64 rng(opt.seed);
  const std::size_t max_n = std::clamp<std::size_t>(opt.max_n, 3, kDefaultStableEnumerationBound);

  PropertyTally smp_median{"smp_median_stable_and_member"};
  PropertyTally conway{"smp_meet_join_closure"};
  PropertyTally extremal{"gale_shapley_extremal"};
  PropertyTally invariants{"median_multiset_and_chain"};
  PropertyTally routes{"meet_join_route_equivalence"};
  PropertyTally constrained{"constrained_gate_or_membership"};
  PropertyTally mkt_min{"market_min_clearing"};
  PropertyTally mkt_closure{"market_clearing_closure"};
  PropertyTally mkt_median{"market_median_clearing"};

  std::uniform_int_distribution<std::size_t> n_dist(3, max_n);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto inst = detail::random_smp(rng, n_dist(rng));
    const auto stable = all_stable_matchings(inst);
    const auto tag = serialize_instance(inst);

    extremal.record(gale_shapley(inst, Side::Men) == stable.front() &&
                        gale_shapley(inst, Side::Women) ==
                            [&] {
                              auto top = stable.front();
                              for (const auto& g : stable) top = join(top, g);
                              return top;
                            }(),
                    tag);
    for (const auto& x : stable) {
      for (const auto& y : stable) {
        conway.record(is_stable(inst, meet(x, y)) && is_stable(inst, join(x, y)), tag);
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, stable.size() - 1);
    std::uniform_int_distribution<std::size_t> k_dist(2, 5);
    for (std::size_t s = 0; s < opt.subsets_per_instance; ++s) {
      std::vector<AssignmentVector> family(k_dist(rng));
      for (auto& g : family) g = stable[pick(rng)];
      const auto medians = generalized_medians(family);
      invariants.record(detail::chain_and_multiset_hold(family, medians), tag);
      routes.record(medians_via_meet_join(family) == medians, tag);
      for (const auto& g : medians) {
        smp_median.record(is_stable(inst, g) &&
                              std::binary_search(stable.begin(), stable.end(), g),
                          tag + " median " + to_string(g));
      }
    }

    // A regular constraint must keep medians inside its set; a crafted
    // two-element set of incomparable matchings must be refused.
    const std::size_t n = inst.n();
    const auto pred = regret_le(inst, rng() % n, rng() % n);
    const auto c = check_constrained(inst, pred, 5, opt.subsets_per_instance, rng());
    constrained.record(c.regularity.regular ? (c.theorem && c.theorem->passed()) : !c.theorem,
                       tag + " " + pred.description());
    if (c.gated()) ++report.gates_triggered;
    if (const auto pair = detail::incomparable_pair(stable)) {
      const auto [x, y] = *pair;
      const Predicate only("pair", [x, y](const AssignmentVector& g) { return g == x || g == y; });
      const auto gated = check_constrained(inst, only, 3, 0);
      constrained.record(gated.gated() && !gated.theorem, tag + " crafted pair");
      if (gated.gated()) ++report.gates_triggered;
    }
  }

  for (std::size_t t = 0; t < 2 * opt.trials; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::uniform_int_distribution<int> value(0, 4);
    std::vector<std::vector<int>> v(n, std::vector<int>(n));
    for (auto& row : v) {
      for (auto& x : row) x = value(rng);
    }
    const MarketInstance inst(std::move(v), kDefaultMarketEnumerationCap);
    const auto tag = serialize_market(inst);
    const auto all = enumerate_clearing_vectors(inst);
    mkt_closure.record(!all.empty() && check_regular(all).regular, tag);
    if (all.empty()) continue;
    auto lowest = all.front();
    for (const auto& p : all) lowest = meet(lowest, p);
    mkt_min.record(min_clearing_prices(inst) == lowest, tag);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (std::size_t s = 0; s < 10; ++s) {
      std::vector<PriceVector> family(1 + rng() % 5);
      for (auto& p : family) p = all[pick(rng)];
      const auto medians = generalized_medians(family);
      invariants.record(detail::chain_and_multiset_hold(family, medians), tag);
      routes.record(medians_via_meet_join(family) == medians, tag);
      for (const auto& g : medians) {
        mkt_median.record(is_market_clearing(inst, g), tag + " median " + to_string(g));
      }
    }
  }

  report.properties = {smp_median, conway,      extremal, invariants, routes,
                       constrained, mkt_min,    mkt_closure, mkt_median};
  return report;
}

}  // namespace medlat
