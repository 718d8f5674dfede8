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

// Square assignment markets with integer valuations and integer prices in
// the box [0, cap]^n. A buyer demands every item maximising v[i][j] - p[j]
// (no outside option, so negative payoffs still count). Prices clear the
// market when the demand graph has a perfect matching.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "medlat/bipartite.hpp"
#include "medlat/coords.hpp"
#include "medlat/error.hpp"
#include "medlat/lattice_median.hpp"

namespace medlat {

inline constexpr std::size_t kDefaultMarketEnumerationN = 4;
inline constexpr int kDefaultMarketEnumerationCap = 6;

class MarketInstance {
 public:
  /// `cap` defaults to the largest valuation.
  explicit MarketInstance(std::vector<std::vector<int>> valuations,
                          std::optional<int> cap = std::nullopt)
      : valuations_(std::move(valuations)) {
    const std::size_t n = valuations_.size();
    int max_v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (valuations_[i].size() != n) {
        throw Error(ErrorKind::SizeMismatch, "buyer " + std::to_string(i) + " has " +
                                                 std::to_string(valuations_[i].size()) +
                                                 " valuations, expected " + std::to_string(n));
      }
      for (int v : valuations_[i]) {
        if (v < 0) throw Error(ErrorKind::InvalidValuation, "negative valuation " + std::to_string(v));
        max_v = std::max(max_v, v);
      }
    }
    if (cap && *cap < 0) throw Error(ErrorKind::InvalidValuation, "negative price cap");
    cap_ = cap.value_or(max_v);
    max_valuation_ = max_v;
    explicit_cap_ = cap.has_value();
  }

  std::size_t n() const noexcept { return valuations_.size(); }
  int value(std::size_t buyer, std::size_t item) const { return valuations_[buyer][item]; }
  const std::vector<std::vector<int>>& valuations() const noexcept { return valuations_; }
  int price_cap() const noexcept { return cap_; }
  int max_valuation() const noexcept { return max_valuation_; }
  bool has_explicit_cap() const noexcept { return explicit_cap_; }

  friend bool operator==(const MarketInstance& a, const MarketInstance& b) {
    return a.valuations_ == b.valuations_ && a.cap_ == b.cap_;
  }

 private:
  std::vector<std::vector<int>> valuations_;
  int cap_ = 0;
  int max_valuation_ = 0;
  bool explicit_cap_ = false;
};

inline void require_prices(const MarketInstance& inst, const PriceVector& p) {
  if (p.size() != inst.n()) {
    throw Error(ErrorKind::SizeMismatch,
                "price vector " + to_string(p) + " for n=" + std::to_string(inst.n()));
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0 || p[j] > inst.price_cap()) {
      throw Error(ErrorKind::OutOfBounds, to_string(p) + " outside [0, " +
                                              std::to_string(inst.price_cap()) + "]");
    }
  }
}

struct DemandGraph {
  std::vector<std::vector<int>> demanded;  // per buyer, ascending item index

  friend bool operator==(const DemandGraph&, const DemandGraph&) = default;

  BipartiteGraph bipartite() const {
    BipartiteGraph g(demanded.size(), demanded.size());
    for (std::size_t i = 0; i < demanded.size(); ++i) {
      for (int j : demanded[i]) g.add_edge(static_cast<int>(i), j);
    }
    return g;
  }
};

namespace detail {

// Demand at arbitrary integer prices; the auction may step outside the box.
inline DemandGraph demand_at(const MarketInstance& inst, const std::vector<int>& p) {
  DemandGraph g;
  g.demanded.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    int best = 0;
    for (std::size_t j = 0; j < inst.n(); ++j) {
      const int payoff = inst.value(i, j) - p[j];
      if (j == 0 || payoff > best) {
        best = payoff;
        g.demanded[i].clear();
      }
      if (payoff == best) g.demanded[i].push_back(static_cast<int>(j));
    }
  }
  return g;
}

}  // namespace detail

inline DemandGraph demand_graph(const MarketInstance& inst, const PriceVector& p) {
  require_prices(inst, p);
  return detail::demand_at(inst, std::vector<int>(p.begin(), p.end()));
}

/// Item assigned to each buyer by a perfect matching in the demand graph,
/// if one exists.
inline std::optional<std::vector<int>> supporting_matching(const MarketInstance& inst,
                                                           const PriceVector& p) {
  const auto m = maximum_matching(demand_graph(inst, p).bipartite());
  if (m.size != inst.n()) return std::nullopt;
  return m.left_mate;
}

inline bool is_market_clearing(const MarketInstance& inst, const PriceVector& p) {
  return supporting_matching(inst, p).has_value();
}

struct AuctionResult {
  PriceVector prices;
  std::size_t rounds = 0;
  std::vector<int> price_sums;  // before normalisation, one per round
};

/// Ascending auction from zero prices. Each round takes a maximum matching
/// of the demand graph; if it is not perfect, the buyers reachable by
/// alternating paths from unmatched buyers form a constricted set, and every
/// item they demand goes up by one. Whenever all prices are positive they
/// are lowered together by their minimum.
inline AuctionResult run_ascending_auction(const MarketInstance& inst) {
  const std::size_t n = inst.n();
  AuctionResult result;
  std::vector<int> p(n, 0);
  // A unit raise hits at most n-1 items and total prices stay below
  // n * (max valuation + 1) between normalisations.
  const std::size_t round_limit =
      n * n * static_cast<std::size_t>(inst.max_valuation() + 1) + n + 1;
  while (true) {
    const auto g = detail::demand_at(inst, p).bipartite();
    const auto m = maximum_matching(g);
    if (m.size == n) break;
    if (result.rounds++ > round_limit) {
      throw Error(ErrorKind::PostconditionViolated, "ascending auction did not terminate");
    }
    const auto reach = alternating_reach(g, m);
    for (std::size_t j = 0; j < n; ++j) {
      if (reach.right[j]) ++p[j];
    }
    result.price_sums.push_back(std::accumulate(p.begin(), p.end(), 0));
    const int lowest = n == 0 ? 0 : *std::min_element(p.begin(), p.end());
    if (lowest > 0) {
      for (auto& x : p) x -= lowest;
    }
  }
  result.prices = PriceVector(std::move(p));
  return result;
}

/// Componentwise-minimum clearing price vector. Fails with OutOfBounds when
/// an explicit cap is below it.
inline PriceVector min_clearing_prices(const MarketInstance& inst) {
  auto result = run_ascending_auction(inst);
  require_prices(inst, result.prices);
  return std::move(result.prices);
}

/// All clearing vectors in [0, cap]^n, lexicographic.
inline std::vector<PriceVector> enumerate_clearing_vectors(
    const MarketInstance& inst, std::size_t max_n = kDefaultMarketEnumerationN,
    int max_cap = kDefaultMarketEnumerationCap) {
  const std::size_t n = inst.n();
  if (n > max_n || inst.price_cap() > max_cap) {
    throw Error(ErrorKind::TooLarge, "n=" + std::to_string(n) + " cap=" +
                                         std::to_string(inst.price_cap()) +
                                         " exceeds enumeration bounds n<=" +
                                         std::to_string(max_n) + " cap<=" + std::to_string(max_cap));
  }
  std::vector<PriceVector> out;
  std::vector<int> p(n, 0);
  while (true) {
    PriceVector candidate(p);
    if (is_market_clearing(inst, candidate)) out.push_back(std::move(candidate));
    std::size_t pos = n;
    while (pos > 0 && p[pos - 1] == inst.price_cap()) p[--pos] = 0;
    if (pos == 0) break;
    ++p[pos - 1];
  }
  return out;
}

/// Coordinatewise j-th order statistic of clearing vectors, re-checked for
/// clearing before it is returned.
inline PriceVector median_clearing(const MarketInstance& inst, const std::vector<PriceVector>& family,
                                   std::size_t j) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "no price vectors given");
  for (const auto& p : family) {
    if (!is_market_clearing(inst, p)) throw Error(ErrorKind::NotClearingInput, to_string(p));
  }
  auto result = generalized_median<PriceVector>(family, j);
  if (!is_market_clearing(inst, result)) {
    throw Error(ErrorKind::PostconditionViolated, "median " + to_string(result) + " does not clear");
  }
  return result;
}

// Text format:
//   market <n> [cap]
//   buyer <i>: v0 v1 ... v(n-1)   (i = 0..n-1, in order)
inline MarketInstance parse_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> n;
  std::optional<int> cap;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::istringstream ls{std::string(trimmed)};
    std::string kw;
    ls >> kw;
    if (!n) {
      std::string size, cap_tok, extra;
      if (kw != "market" || !(ls >> size) || (ls >> cap_tok && (ls >> extra))) {
        throw Error(ErrorKind::MalformedFile, "expected 'market <n> [cap]' header, got: " + line);
      }
      n = static_cast<std::size_t>(detail::parse_natural(size, line));
      if (!cap_tok.empty()) cap = detail::parse_natural(cap_tok, line);
      continue;
    }
    std::string idx;
    if (kw != "buyer" || !(ls >> idx) || idx.empty() || idx.back() != ':') {
      throw Error(ErrorKind::MalformedFile, "expected 'buyer <i>: ...', got: " + line);
    }
    const int who = detail::parse_natural(std::string_view(idx).substr(0, idx.size() - 1), line);
    if (static_cast<std::size_t>(who) != rows.size()) {
      throw Error(ErrorKind::MalformedFile, "buyer lines out of order at: " + line);
    }
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) row.push_back(detail::parse_natural(tok, line));
    rows.push_back(std::move(row));
  }
  if (!n) throw Error(ErrorKind::MalformedFile, "missing 'market <n>' header");
  if (rows.size() != *n) {
    throw Error(ErrorKind::SizeMismatch, "header declares n=" + std::to_string(*n) + ", found " +
                                             std::to_string(rows.size()) + " buyers");
  }
  return MarketInstance(std::move(rows), cap);
}

/// Canonical form always states the cap.
inline std::string serialize_market(const MarketInstance& inst) {
  std::string out = "market " + std::to_string(inst.n()) + " " +
                    std::to_string(inst.price_cap()) + "\n";
  for (std::size_t i = 0; i < inst.n(); ++i) {
    out += "buyer " + std::to_string(i) + ":";
    for (int v : inst.valuations()[i]) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

}  // namespace medlat
