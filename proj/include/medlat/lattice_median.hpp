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

// Generalized medians of k elements of a product of chains.
//
// Given M_1..M_k, the j-th median G^j takes in every coordinate r the j-th
// smallest of M_1[r]..M_k[r] (j is 1-based, ascending). When the M_i all lie
// in a sublattice S (a set closed under componentwise min and max), every
// G^j lies in S as well. Two routes compute the medians:
//
//   generalized_medians    sorts each coordinate independently;
//   medians_via_meet_join  only ever applies meet/join to whole elements,
//                          so each step visibly stays inside S.
//
// They must agree, which the tests exploit as a cross-check.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "medlat/coords.hpp"
#include "medlat/error.hpp"

namespace medlat {

template <LatticeVector V>
void require_family(std::span<const V> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "median of an empty family");
  for (const auto& v : family) require_same_shape(family.front(), v);
}

/// All k medians G^1..G^k, j ascending. Duplicates in the input count with
/// multiplicity.
template <LatticeVector V>
std::vector<V> generalized_medians(std::span<const V> family) {
  require_family(family);
  const std::size_t k = family.size();
  const std::size_t dim = family.front().size();
  std::vector<std::vector<int>> out(k, std::vector<int>(dim));
  std::vector<int> column(k);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t i = 0; i < k; ++i) column[i] = family[i][r];
    std::sort(column.begin(), column.end());
    for (std::size_t j = 0; j < k; ++j) out[j][r] = column[j];
  }
  std::vector<V> medians;
  medians.reserve(k);
  for (auto& raw : out) medians.emplace_back(std::move(raw));
  return medians;
}

template <LatticeVector V>
std::vector<V> generalized_medians(const std::vector<V>& family) {
  return generalized_medians(std::span<const V>(family));
}

/// The single median G^j, 1 <= j <= k.
template <LatticeVector V>
V generalized_median(std::span<const V> family, std::size_t j) {
  require_family(family);
  if (j < 1 || j > family.size()) {
    throw Error(ErrorKind::JOutOfRange,
                "j=" + std::to_string(j) + " for k=" + std::to_string(family.size()));
  }
  return generalized_medians(family)[j - 1];
}

/// Inputs M_1..M_k together with their medians G^1..G^k.
template <LatticeVector V>
struct MedianFamily {
  std::vector<V> inputs;
  std::vector<V> medians;
};

template <LatticeVector V>
MedianFamily<V> make_median_family(std::vector<V> inputs) {
  auto medians = generalized_medians<V>(inputs);
  return {std::move(inputs), std::move(medians)};
}

/// Medians by insertion into a chain. The medians P_1 <= ... <= P_{t-1} of
/// the first t-1 inputs are a chain; appending M_t and sweeping a (meet, join)
/// comparator from the top slot downwards replaces the pair (P_{t-1}, M_t) by
/// (P_{t-1} meet M_t, P_{t-1} join M_t) and continues until the family is a
/// chain again. Sweeps repeat until no comparator changes anything.
template <LatticeVector V>
std::vector<V> medians_via_meet_join(std::span<const V> family) {
  require_family(family);
  std::vector<V> chain;
  chain.reserve(family.size());
  for (const auto& next : family) {
    chain.push_back(next);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = chain.size() - 1; i > 0; --i) {
        V lo = meet(chain[i - 1], chain[i]);
        V hi = join(chain[i - 1], chain[i]);
        if (!(lo == chain[i - 1]) || !(hi == chain[i])) {
          chain[i - 1] = std::move(lo);
          chain[i] = std::move(hi);
          changed = true;
        }
      }
    }
  }
  return chain;
}

template <LatticeVector V>
std::vector<V> medians_via_meet_join(const std::vector<V>& family) {
  return medians_via_meet_join(std::span<const V>(family));
}

enum class LatticeOp { Meet, Join };

constexpr std::string_view op_name(LatticeOp op) {
  return op == LatticeOp::Meet ? "meet" : "join";
}

template <LatticeVector V>
struct Counterexample {
  V x;
  V y;
  LatticeOp op;
};

template <LatticeVector V>
struct PredicateReport {
  bool regular = true;
  std::optional<Counterexample<V>> counterexample;
};

/// Closure of `elements` under meet and join, where membership of a result
/// is decided by `satisfies`. Pairs are scanned as (i, j) with i <= j in
/// input order, meet before join; the first failure is reported.
template <LatticeVector V>
PredicateReport<V> check_regular(std::span<const V> elements,
                                 const std::function<bool(const V&)>& satisfies) {
  PredicateReport<V> report;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i; j < elements.size(); ++j) {
      const auto& x = elements[i];
      const auto& y = elements[j];
      if (!satisfies(meet(x, y))) {
        report.regular = false;
        report.counterexample = Counterexample<V>{x, y, LatticeOp::Meet};
        return report;
      }
      if (!satisfies(join(x, y))) {
        report.regular = false;
        report.counterexample = Counterexample<V>{x, y, LatticeOp::Join};
        return report;
      }
    }
  }
  return report;
}

/// Closure of `elements` under meet and join, membership meaning "one of
/// `elements`".
template <LatticeVector V>
PredicateReport<V> check_regular(std::span<const V> elements) {
  const std::set<V> members(elements.begin(), elements.end());
  return check_regular<V>(elements, [&](const V& v) { return members.contains(v); });
}

template <LatticeVector V>
PredicateReport<V> check_regular(const std::vector<V>& elements) {
  return check_regular(std::span<const V>(elements));
}

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::string_view kRngName = "std::mt19937_64";
inline constexpr std::size_t kExhaustiveSubsetBound = 12;

template <LatticeVector V>
struct MedianViolation {
  std::vector<V> subset;
  std::size_t j;
  V median;

  friend bool operator==(const MedianViolation&, const MedianViolation&) = default;
  friend auto operator<=>(const MedianViolation&, const MedianViolation&) = default;
};

template <LatticeVector V>
struct MedianTheoremReport {
  bool exhaustive = false;
  std::size_t subsets_checked = 0;
  std::size_t medians_checked = 0;
  std::vector<MedianViolation<V>> violations;

  bool passed() const { return violations.empty(); }
};

/// Checks that every median of families drawn from `satisfying` stays in
/// `satisfying`. Sets of at most 12 elements are covered exhaustively (every
/// subset of size 1..k_max); larger sets get `trials` random families of size
/// 1..k_max drawn with repetition. Throws NotRegular when the set is not a
/// sublattice, since then nothing is claimed.
template <LatticeVector V>
MedianTheoremReport<V> check_median_theorem(std::span<const V> satisfying, std::size_t k_max,
                                            std::size_t trials,
                                            std::uint64_t seed = kDefaultSeed) {
  const auto regularity = check_regular(satisfying);
  if (!regularity.regular) {
    const auto& ce = *regularity.counterexample;
    throw Error(ErrorKind::NotRegular, to_string(ce.x) + " " + to_string(ce.y) + " " +
                                           std::string(op_name(ce.op)));
  }
  const std::set<V> members(satisfying.begin(), satisfying.end());
  MedianTheoremReport<V> report;

  auto check = [&](const std::vector<V>& subset) {
    ++report.subsets_checked;
    const auto medians = generalized_medians<V>(subset);
    for (std::size_t j = 0; j < medians.size(); ++j) {
      ++report.medians_checked;
      if (!members.contains(medians[j])) {
        report.violations.push_back({subset, j + 1, medians[j]});
      }
    }
  };

  if (satisfying.empty() || k_max == 0) return report;
  if (satisfying.size() <= kExhaustiveSubsetBound) {
    report.exhaustive = true;
    const std::size_t n = satisfying.size();
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > k_max) continue;
      std::vector<V> subset;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint32_t{1} << i)) subset.push_back(satisfying[i]);
      }
      check(subset);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(1, k_max);
    std::uniform_int_distribution<std::size_t> pick(0, satisfying.size() - 1);
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<V> subset(size_dist(rng));
      for (auto& s : subset) s = satisfying[pick(rng)];
      check(subset);
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

template <LatticeVector V>
MedianTheoremReport<V> check_median_theorem(const std::vector<V>& satisfying, std::size_t k_max,
                                            std::size_t trials,
                                            std::uint64_t seed = kDefaultSeed) {
  return check_median_theorem(std::span<const V>(satisfying), k_max, trials, seed);
}

}  // namespace medlat
