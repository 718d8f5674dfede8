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

// Stable marriage with complete strict preferences, viewed as a predicate on
// the lattice of rank assignments: G[i] is the rank (0 = top choice) of man
// i's assigned woman in his list, ordered componentwise, so G <= H means every
// man does at least as well in G as in H.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medlat/coords.hpp"
#include "medlat/error.hpp"
#include "medlat/lattice_median.hpp"

namespace medlat {

inline constexpr std::size_t kDefaultStableEnumerationBound = 8;

namespace detail {

inline void require_permutation(const std::vector<int>& list, std::size_t n,
                                const std::string& who) {
  if (list.size() != n) {
    throw Error(ErrorKind::SizeMismatch, who + " lists " + std::to_string(list.size()) +
                                             " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int x : list) {
    if (x < 0 || static_cast<std::size_t>(x) >= n || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorKind::NotAPermutation, who + " preference list");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
}

}  // namespace detail

class SMPInstance {
 public:
  SMPInstance(std::vector<std::vector<int>> men_prefs, std::vector<std::vector<int>> women_prefs)
      : men_prefs_(std::move(men_prefs)), women_prefs_(std::move(women_prefs)) {
    const std::size_t n = men_prefs_.size();
    if (women_prefs_.size() != n) {
      throw Error(ErrorKind::SizeMismatch, std::to_string(n) + " men but " +
                                               std::to_string(women_prefs_.size()) + " women");
    }
    man_rank_.assign(n, std::vector<int>(n));
    woman_rank_.assign(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      detail::require_permutation(men_prefs_[i], n, "man " + std::to_string(i));
      detail::require_permutation(women_prefs_[i], n, "woman " + std::to_string(i));
      for (std::size_t r = 0; r < n; ++r) {
        man_rank_[i][static_cast<std::size_t>(men_prefs_[i][r])] = static_cast<int>(r);
        woman_rank_[i][static_cast<std::size_t>(women_prefs_[i][r])] = static_cast<int>(r);
      }
    }
  }

  std::size_t n() const noexcept { return men_prefs_.size(); }
  const std::vector<std::vector<int>>& men_prefs() const noexcept { return men_prefs_; }
  const std::vector<std::vector<int>>& women_prefs() const noexcept { return women_prefs_; }

  int man_rank(std::size_t man, std::size_t woman) const { return man_rank_[man][woman]; }
  int woman_rank(std::size_t woman, std::size_t man) const { return woman_rank_[woman][man]; }

  friend bool operator==(const SMPInstance& a, const SMPInstance& b) {
    return a.men_prefs_ == b.men_prefs_ && a.women_prefs_ == b.women_prefs_;
  }

 private:
  std::vector<std::vector<int>> men_prefs_;
  std::vector<std::vector<int>> women_prefs_;
  std::vector<std::vector<int>> man_rank_;
  std::vector<std::vector<int>> woman_rank_;
};

// Text format, all indices 0-based, most preferred first:
//   smp <n>
//   man <i>: w w w ...     (i = 0..n-1, in order)
//   woman <i>: m m m ...   (i = 0..n-1, in order)
inline SMPInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> n;
  std::vector<std::vector<int>> men, women;
  while (std::getline(in, line)) {
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::istringstream ls{std::string(trimmed)};
    std::string kw;
    ls >> kw;
    if (!n) {
      long long size = -1;
      std::string extra;
      if (kw != "smp" || !(ls >> size) || size < 0 || (ls >> extra)) {
        throw Error(ErrorKind::MalformedFile, "expected 'smp <n>' header, got: " + line);
      }
      n = static_cast<std::size_t>(size);
      continue;
    }
    auto* side = kw == "man" ? &men : kw == "woman" ? &women : nullptr;
    if (!side) throw Error(ErrorKind::MalformedFile, "unknown line: " + line);
    if (kw == "man" && !women.empty()) {
      throw Error(ErrorKind::MalformedFile, "man lines must precede woman lines");
    }
    std::string idx;
    if (!(ls >> idx) || idx.empty() || idx.back() != ':') {
      throw Error(ErrorKind::MalformedFile, "expected '<index>:' in: " + line);
    }
    const int who = detail::parse_natural(std::string_view(idx).substr(0, idx.size() - 1), line);
    if (static_cast<std::size_t>(who) != side->size()) {
      throw Error(ErrorKind::MalformedFile, kw + " lines out of order at: " + line);
    }
    std::vector<int> prefs;
    std::string tok;
    while (ls >> tok) prefs.push_back(detail::parse_natural(tok, line));
    side->push_back(std::move(prefs));
  }
  if (!n) throw Error(ErrorKind::MalformedFile, "missing 'smp <n>' header");
  if (men.size() != *n || women.size() != *n) {
    throw Error(ErrorKind::SizeMismatch,
                "header declares n=" + std::to_string(*n) + ", found " +
                    std::to_string(men.size()) + " men and " + std::to_string(women.size()) +
                    " women");
  }
  return SMPInstance(std::move(men), std::move(women));
}

inline std::string serialize_instance(const SMPInstance& inst) {
  std::string out = "smp " + std::to_string(inst.n()) + "\n";
  auto emit = [&](const char* kw, const std::vector<std::vector<int>>& prefs) {
    for (std::size_t i = 0; i < prefs.size(); ++i) {
      out += std::string(kw) + " " + std::to_string(i) + ":";
      for (int x : prefs[i]) out += " " + std::to_string(x);
      out += "\n";
    }
  };
  emit("man", inst.men_prefs());
  emit("woman", inst.women_prefs());
  return out;
}

inline void require_assignment(const SMPInstance& inst, const AssignmentVector& g) {
  if (g.size() != inst.n()) {
    throw Error(ErrorKind::SizeMismatch, "assignment " + to_string(g) + " for n=" +
                                             std::to_string(inst.n()));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0 || static_cast<std::size_t>(g[i]) >= inst.n()) {
      throw Error(ErrorKind::RankOutOfRange,
                  "man " + std::to_string(i) + " has rank " + std::to_string(g[i]));
    }
  }
}

inline int woman_of(const SMPInstance& inst, const AssignmentVector& g, std::size_t man) {
  require_assignment(inst, g);
  if (man >= inst.n()) throw Error(ErrorKind::IndexOutOfRange, "man " + std::to_string(man));
  return inst.men_prefs()[man][static_cast<std::size_t>(g[man])];
}

/// Pairs (man, woman) in man order. Not necessarily a matching.
inline std::vector<std::pair<int, int>> assignment_to_matching(const SMPInstance& inst,
                                                               const AssignmentVector& g) {
  require_assignment(inst, g);
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    out.emplace_back(static_cast<int>(i), inst.men_prefs()[i][static_cast<std::size_t>(g[i])]);
  }
  return out;
}

/// Rank vector of the matching given as wife_of[man].
inline AssignmentVector assignment_from_wives(const SMPInstance& inst,
                                              const std::vector<int>& wife_of) {
  if (wife_of.size() != inst.n()) throw Error(ErrorKind::SizeMismatch, "wife list size");
  std::vector<int> ranks(inst.n());
  for (std::size_t m = 0; m < inst.n(); ++m) {
    const int w = wife_of[m];
    if (w < 0 || static_cast<std::size_t>(w) >= inst.n()) {
      throw Error(ErrorKind::IndexOutOfRange, "woman " + std::to_string(w));
    }
    ranks[m] = inst.man_rank(m, static_cast<std::size_t>(w));
  }
  return AssignmentVector(std::move(ranks));
}

struct StabilityReport {
  bool is_matching = false;
  std::vector<std::pair<int, int>> blocking;  // (man, woman)
  bool stable = false;
};

/// Blocking pairs are only enumerated when the assignment is a matching.
inline StabilityReport stability_report(const SMPInstance& inst, const AssignmentVector& g) {
  require_assignment(inst, g);
  const std::size_t n = inst.n();
  StabilityReport report;
  std::vector<int> husband(n, -1);
  report.is_matching = true;
  for (std::size_t m = 0; m < n; ++m) {
    const auto w = static_cast<std::size_t>(inst.men_prefs()[m][static_cast<std::size_t>(g[m])]);
    if (husband[w] != -1) report.is_matching = false;
    husband[w] = static_cast<int>(m);
  }
  if (!report.is_matching) return report;
  for (std::size_t m = 0; m < n; ++m) {
    // Only women m ranks above his wife can block with him.
    for (int r = 0; r < g[m]; ++r) {
      const auto w = static_cast<std::size_t>(inst.men_prefs()[m][static_cast<std::size_t>(r)]);
      if (inst.woman_rank(w, m) < inst.woman_rank(w, static_cast<std::size_t>(husband[w]))) {
        report.blocking.emplace_back(static_cast<int>(m), static_cast<int>(w));
      }
    }
  }
  report.stable = report.blocking.empty();
  return report;
}

inline bool is_stable(const SMPInstance& inst, const AssignmentVector& g) {
  return stability_report(inst, g).stable;
}

enum class Side { Men, Women };

/// Deferred acceptance. Free proposers are served smallest index first. The
/// result is always expressed as the men's rank vector.
inline AssignmentVector gale_shapley(const SMPInstance& inst, Side proposing = Side::Men) {
  const std::size_t n = inst.n();
  const bool men_propose = proposing == Side::Men;
  const auto& prefs = men_propose ? inst.men_prefs() : inst.women_prefs();
  auto receiver_rank = [&](std::size_t receiver, std::size_t proposer) {
    return men_propose ? inst.woman_rank(receiver, proposer) : inst.man_rank(receiver, proposer);
  };
  std::vector<std::size_t> next_choice(n, 0);
  std::vector<int> holds(n, -1);     // receiver -> proposer
  std::vector<int> partner(n, -1);   // proposer -> receiver
  std::vector<std::size_t> free;
  for (std::size_t i = n; i-- > 0;) free.push_back(i);
  while (!free.empty()) {
    const std::size_t p = free.back();
    free.pop_back();
    const auto r = static_cast<std::size_t>(prefs[p][next_choice[p]++]);
    const int current = holds[r];
    if (current == -1) {
      holds[r] = static_cast<int>(p);
      partner[p] = static_cast<int>(r);
    } else if (receiver_rank(r, p) < receiver_rank(r, static_cast<std::size_t>(current))) {
      holds[r] = static_cast<int>(p);
      partner[p] = static_cast<int>(r);
      partner[static_cast<std::size_t>(current)] = -1;
      free.push_back(static_cast<std::size_t>(current));
    } else {
      free.push_back(p);
    }
  }
  return assignment_from_wives(inst, men_propose ? partner : holds);
}

/// Every stable matching, as rank vectors in lexicographic order. Men are
/// assigned in index order and each partial assignment is abandoned as soon
/// as two assigned couples contain a blocking pair.
inline std::vector<AssignmentVector> all_stable_matchings(
    const SMPInstance& inst, std::size_t bound = kDefaultStableEnumerationBound) {
  const std::size_t n = inst.n();
  if (n > bound) {
    throw Error(ErrorKind::TooLarge,
                "n=" + std::to_string(n) + " exceeds enumeration bound " + std::to_string(bound));
  }
  std::vector<AssignmentVector> out;
  std::vector<int> ranks(n), wife(n);
  std::vector<bool> taken(n, false);

  auto blocks = [&](std::size_t m, std::size_t w, std::size_t w_husband) {
    return inst.man_rank(m, w) < ranks[m] && inst.woman_rank(w, m) < inst.woman_rank(w, w_husband);
  };

  std::function<void(std::size_t)> rec = [&](std::size_t m) {
    if (m == n) {
      out.emplace_back(ranks);
      return;
    }
    for (std::size_t r = 0; r < n; ++r) {
      const auto w = static_cast<std::size_t>(inst.men_prefs()[m][r]);
      if (taken[w]) continue;
      ranks[m] = static_cast<int>(r);
      wife[m] = static_cast<int>(w);
      bool ok = true;
      for (std::size_t other = 0; other < m && ok; ++other) {
        const auto ow = static_cast<std::size_t>(wife[other]);
        ok = !blocks(m, ow, other) && !blocks(other, w, m);
      }
      if (!ok) continue;
      taken[w] = true;
      rec(m + 1);
      taken[w] = false;
    }
  };
  rec(0);
  return out;
}

/// Coordinatewise j-th order statistic of stable matchings; the result is
/// re-checked for stability before it is returned.
inline AssignmentVector median_stable(const SMPInstance& inst,
                                      const std::vector<AssignmentVector>& family, std::size_t j) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "no matchings given");
  for (const auto& g : family) {
    if (!is_stable(inst, g)) throw Error(ErrorKind::NotStableInput, to_string(g));
  }
  auto result = generalized_median<AssignmentVector>(family, j);
  if (!is_stable(inst, result)) {
    throw Error(ErrorKind::PostconditionViolated, "median " + to_string(result) + " is unstable");
  }
  return result;
}

/// A named boolean predicate over rank assignments.
class Predicate {
 public:
  using Fn = std::function<bool(const AssignmentVector&)>;

  Predicate(std::string description, Fn fn)
      : description_(std::move(description)), fn_(std::move(fn)) {}

  bool operator()(const AssignmentVector& g) const { return fn_(g); }
  const std::string& description() const noexcept { return description_; }

  friend Predicate operator&&(Predicate a, Predicate b) {
    std::string d = a.description_ + " && " + b.description_;
    return Predicate(std::move(d), [a = std::move(a), b = std::move(b)](const AssignmentVector& g) {
      return a(g) && b(g);
    });
  }

 private:
  std::string description_;
  Fn fn_;
};

namespace detail {
inline void require_index(const SMPInstance& inst, long long i, const char* what) {
  if (i < 0 || static_cast<std::size_t>(i) >= inst.n()) {
    throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " " + std::to_string(i));
  }
}
}  // namespace detail

/// Man i's regret is at most man j's.
inline Predicate regret_le(const SMPInstance& inst, std::size_t i, std::size_t j) {
  detail::require_index(inst, static_cast<long long>(i), "man");
  detail::require_index(inst, static_cast<long long>(j), "man");
  return Predicate("regret_le(" + std::to_string(i) + "," + std::to_string(j) + ")",
                   [i, j](const AssignmentVector& g) { return g[i] <= g[j]; });
}

inline Predicate regret_at_most(const SMPInstance& inst, std::size_t i, int c) {
  detail::require_index(inst, static_cast<long long>(i), "man");
  return Predicate("regret_at_most(" + std::to_string(i) + "," + std::to_string(c) + ")",
                   [i, c](const AssignmentVector& g) { return g[i] <= c; });
}

/// Man m is not married to woman w.
inline Predicate forbids(const SMPInstance& inst, std::size_t m, std::size_t w) {
  detail::require_index(inst, static_cast<long long>(m), "man");
  detail::require_index(inst, static_cast<long long>(w), "woman");
  const int forbidden_rank = inst.man_rank(m, w);
  return Predicate("forbids(" + std::to_string(m) + "," + std::to_string(w) + ")",
                   [m, forbidden_rank](const AssignmentVector& g) { return g[m] != forbidden_rank; });
}

inline std::vector<AssignmentVector> filter_matchings(const std::vector<AssignmentVector>& stable,
                                                      const Predicate& pred) {
  std::vector<AssignmentVector> out;
  for (const auto& g : stable) {
    if (pred(g)) out.push_back(g);
  }
  return out;
}

/// Outcome of the constrained-median pipeline: either the filtered set was
/// found closed under meet/join and the median check ran on it, or it was not
/// and `theorem` stays empty.
struct ConstrainedReport {
  std::string predicate;
  std::vector<AssignmentVector> filtered;
  PredicateReport<AssignmentVector> regularity;
  std::optional<MedianTheoremReport<AssignmentVector>> theorem;

  bool gated() const { return !regularity.regular; }
};

inline ConstrainedReport check_constrained(const SMPInstance& inst, const Predicate& pred,
                                           std::size_t k_max, std::size_t trials,
                                           std::uint64_t seed = kDefaultSeed) {
  ConstrainedReport report;
  report.predicate = pred.description();
  report.filtered = filter_matchings(all_stable_matchings(inst), pred);
  report.regularity = check_regular(report.filtered);
  if (report.regularity.regular) {
    report.theorem = check_median_theorem(report.filtered, k_max, trials, seed);
  }
  return report;
}

/// j-th median of stable matchings that satisfy `pred`. Refuses (NotRegular)
/// unless the set of stable matchings satisfying `pred` is a sublattice.
inline AssignmentVector constrained_median(const SMPInstance& inst, const Predicate& pred,
                                           const std::vector<AssignmentVector>& family,
                                           std::size_t j) {
  const auto filtered = filter_matchings(all_stable_matchings(inst), pred);
  const auto regularity = check_regular(filtered);
  if (!regularity.regular) {
    const auto& ce = *regularity.counterexample;
    throw Error(ErrorKind::NotRegular, pred.description() + ": " + to_string(ce.x) + " " +
                                           to_string(ce.y) + " " + std::string(op_name(ce.op)));
  }
  for (const auto& g : family) {
    if (!is_stable(inst, g) || !pred(g)) throw Error(ErrorKind::NotStableInput, to_string(g));
  }
  auto result = generalized_median<AssignmentVector>(family, j);
  if (std::find(filtered.begin(), filtered.end(), result) == filtered.end()) {
    throw Error(ErrorKind::PostconditionViolated,
                "median " + to_string(result) + " left the constrained set");
  }
  return result;
}

}  // namespace medlat
