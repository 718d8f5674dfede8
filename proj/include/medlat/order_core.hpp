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

// Finite posets, chain partitions, order ideals and the Birkhoff
// correspondence between a finite distributive lattice and the down-sets of
// its join-irreducible elements.
//
// An order ideal is carried two ways: externally as an IdealVector (how many
// elements of each chain it contains) and internally as a bitmask over the
// poset's elements. The two always describe the same set.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medlat/bipartite.hpp"
#include "medlat/coords.hpp"
#include "medlat/error.hpp"

namespace medlat {

using ElementMask = std::uint64_t;

inline constexpr std::size_t kMaxPosetElements = 64;
inline constexpr std::size_t kDefaultIdealEnumerationBound = 20;
inline constexpr std::size_t kMaxExplicitLatticeSize = 512;

inline ElementMask bit(std::size_t i) { return ElementMask{1} << i; }

class Poset {
 public:
  using Cover = std::pair<std::string, std::string>;

  /// Builds the poset generated by `covers` (pairs lower, upper). The pairs
  /// need not be a transitive reduction; the stored cover relation is.
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<Cover>& covers) {
    if (elements.size() > kMaxPosetElements) {
      throw Error(ErrorKind::TooLarge,
                  std::to_string(elements.size()) + " elements exceed " +
                      std::to_string(kMaxPosetElements));
    }
    Poset p;
    p.labels_ = std::move(elements);
    for (std::size_t i = 0; i < p.labels_.size(); ++i) {
      if (!p.index_.emplace(p.labels_[i], i).second) {
        throw Error(ErrorKind::DuplicateLabel, p.labels_[i]);
      }
    }
    const std::size_t n = p.labels_.size();
    std::vector<std::vector<std::size_t>> lower_of(n);
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> upper_of(n);
    for (const auto& [lo, hi] : covers) {
      const auto l = p.index_of(lo);
      const auto h = p.index_of(hi);
      lower_of[h].push_back(l);
      upper_of[l].push_back(h);
      ++indegree[h];
    }

    // Kahn's algorithm; anything left unvisited sits on a cycle.
    std::vector<std::size_t> order;
    std::queue<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push(i);
    }
    while (!ready.empty()) {
      const auto x = ready.front();
      ready.pop();
      order.push_back(x);
      for (auto y : upper_of[x]) {
        if (--indegree[y] == 0) ready.push(y);
      }
    }
    if (order.size() != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] != 0) throw Error(ErrorKind::CycleDetected, p.labels_[i]);
      }
    }

    p.below_.assign(n, 0);
    for (auto x : order) {
      p.below_[x] = bit(x);
      for (auto lo : lower_of[x]) p.below_[x] |= p.below_[lo];
    }
    p.compute_covers();
    return p;
  }

  /// Builds a poset from an explicit order relation `leq(i, j)`, which must
  /// be reflexive, antisymmetric and transitive.
  static Poset from_relation(std::vector<std::string> elements,
                             const std::function<bool(std::size_t, std::size_t)>& le) {
    std::vector<Cover> strict;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) {
        if (i != j && le(i, j)) strict.emplace_back(elements[i], elements[j]);
      }
    }
    return from_covers(std::move(elements), strict);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::size_t index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw Error(ErrorKind::UnknownLabel, std::string(label));
    return it->second;
  }

  bool leq(std::size_t a, std::size_t b) const { return (below_[b] & bit(a)) != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  /// Principal ideal {x : x <= i}, including i.
  ElementMask down_set(std::size_t i) const { return below_[i]; }
  ElementMask all() const {
    return size() == 64 ? ~ElementMask{0} : bit(size()) - 1;
  }

  /// Hasse diagram as index pairs (lower, upper).
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept {
    return covers_;
  }

  bool is_ideal(ElementMask m) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if ((m & bit(i)) && (below_[i] & ~m)) return false;
    }
    return true;
  }

  ElementMask mask_of(const std::vector<std::string>& subset) const {
    ElementMask m = 0;
    for (const auto& s : subset) m |= bit(index_of(s));
    return m;
  }

  std::vector<std::string> labels_of(ElementMask m) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (m & bit(i)) out.push_back(labels_[i]);
    }
    return out;
  }

 private:
  void compute_covers() {
    covers_.clear();
    for (std::size_t hi = 0; hi < size(); ++hi) {
      for (std::size_t lo = 0; lo < size(); ++lo) {
        if (!less(lo, hi)) continue;
        bool direct = true;
        for (std::size_t z = 0; z < size() && direct; ++z) {
          if (less(lo, z) && less(z, hi)) direct = false;
        }
        if (direct) covers_.emplace_back(lo, hi);
      }
    }
  }

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<ElementMask> below_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

inline Poset poset_from_covers(std::vector<std::string> elements,
                               const std::vector<Poset::Cover>& covers) {
  return Poset::from_covers(std::move(elements), covers);
}

class ChainPartition {
 public:
  struct Position {
    std::size_t chain;
    std::size_t depth;
  };

  ChainPartition() = default;
  ChainPartition(std::size_t element_count, std::vector<std::vector<std::size_t>> chains)
      : chains_(std::move(chains)), position_(element_count), masks_(chains_.size(), 0) {
    for (std::size_t c = 0; c < chains_.size(); ++c) {
      for (std::size_t d = 0; d < chains_[c].size(); ++d) {
        position_[chains_[c][d]] = {c, d};
        masks_[c] |= bit(chains_[c][d]);
      }
    }
  }

  std::size_t chain_count() const noexcept { return chains_.size(); }
  const std::vector<std::vector<std::size_t>>& chains() const noexcept { return chains_; }
  const std::vector<std::size_t>& chain(std::size_t c) const { return chains_[c]; }
  Position chain_of(std::size_t element) const { return position_[element]; }
  ElementMask chain_mask(std::size_t c) const { return masks_[c]; }

  /// Mask of the first `count` elements of chain `c`.
  ElementMask prefix_mask(std::size_t c, std::size_t count) const {
    ElementMask m = 0;
    for (std::size_t d = 0; d < count; ++d) m |= bit(chains_[c][d]);
    return m;
  }

  std::vector<std::vector<std::string>> labelled(const Poset& p) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& ch : chains_) {
      auto& row = out.emplace_back();
      for (auto e : ch) row.push_back(p.label(e));
    }
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> chains_;
  std::vector<Position> position_;
  std::vector<ElementMask> masks_;
};

/// Minimum chain partition (Dilworth) from a maximum matching in the split
/// graph of the strict order: x on the left is joined to every y > x on the
/// right, and each matched edge x -> y chains y directly after x. Chains are
/// listed by the index of their least element.
inline ChainPartition chain_partition(const Poset& p) {
  const std::size_t n = p.size();
  BipartiteGraph g(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.less(x, y)) g.add_edge(static_cast<int>(x), static_cast<int>(y));
    }
  }
  const Matching m = maximum_matching(g);
  std::vector<std::vector<std::size_t>> chains;
  for (std::size_t head = 0; head < n; ++head) {
    if (m.right_mate[head] != kUnmatched) continue;
    auto& chain = chains.emplace_back();
    for (int cur = static_cast<int>(head); cur != kUnmatched;
         cur = m.left_mate[static_cast<std::size_t>(cur)]) {
      chain.push_back(static_cast<std::size_t>(cur));
    }
  }
  return ChainPartition(n, std::move(chains));
}

inline void require_shape(const ChainPartition& cp, const IdealVector& v) {
  if (v.size() != cp.chain_count()) {
    throw Error(ErrorKind::ShapeMismatch,
                "vector " + to_string(v) + " for " + std::to_string(cp.chain_count()) +
                    " chains");
  }
}

inline IdealVector mask_to_vector(const Poset& p, const ChainPartition& cp, ElementMask ideal) {
  if (!p.is_ideal(ideal)) throw Error(ErrorKind::NotAnIdeal, "set is not downward closed");
  std::vector<int> counts(cp.chain_count());
  for (std::size_t c = 0; c < cp.chain_count(); ++c) {
    counts[c] = std::popcount(ideal & cp.chain_mask(c));
  }
  return IdealVector(std::move(counts));
}

inline ElementMask vector_to_mask(const Poset& p, const ChainPartition& cp, const IdealVector& v) {
  require_shape(cp, v);
  ElementMask m = 0;
  for (std::size_t c = 0; c < cp.chain_count(); ++c) {
    if (v[c] < 0 || static_cast<std::size_t>(v[c]) > cp.chain(c).size()) {
      throw Error(ErrorKind::OutOfBounds,
                  to_string(v) + " exceeds length of chain " + std::to_string(c));
    }
    m |= cp.prefix_mask(c, static_cast<std::size_t>(v[c]));
  }
  if (!p.is_ideal(m)) throw Error(ErrorKind::NotAnIdeal, to_string(v));
  return m;
}

inline IdealVector ideal_to_vector(const Poset& p, const ChainPartition& cp,
                                   const std::vector<std::string>& ideal) {
  return mask_to_vector(p, cp, p.mask_of(ideal));
}

/// Labels of the ideal encoded by `v`, in element order.
inline std::vector<std::string> vector_to_ideal(const Poset& p, const ChainPartition& cp,
                                                const IdealVector& v) {
  return p.labels_of(vector_to_mask(p, cp, v));
}

/// Every order ideal exactly once, lexicographic on count vectors.
inline std::vector<IdealVector> all_ideals(const Poset& p, const ChainPartition& cp,
                                           std::size_t bound = kDefaultIdealEnumerationBound) {
  if (p.size() > bound) {
    throw Error(ErrorKind::TooLarge, std::to_string(p.size()) + " elements exceed the bound " +
                                         std::to_string(bound));
  }
  const std::size_t k = cp.chain_count();
  std::vector<IdealVector> out;
  std::vector<int> counts(k, 0);
  // Elements of chains 0..c, used to prune partial choices early.
  std::vector<ElementMask> seen(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) seen[c + 1] = seen[c] | cp.chain_mask(c);

  auto closed_within = [&](ElementMask m, ElementMask universe) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if ((m & bit(i)) && (p.down_set(i) & universe & ~m)) return false;
    }
    return true;
  };

  std::function<void(std::size_t, ElementMask)> rec = [&](std::size_t c, ElementMask m) {
    if (c == k) {
      out.emplace_back(counts);
      return;
    }
    for (std::size_t len = 0; len <= cp.chain(c).size(); ++len) {
      const ElementMask next = m | cp.prefix_mask(c, len);
      // A short prefix can miss what earlier chains need; a long one can need
      // what earlier chains lack. Neither end bounds the other.
      if (!closed_within(next, seen[c + 1])) continue;
      counts[c] = static_cast<int>(len);
      rec(c + 1, next);
    }
    counts[c] = 0;
  };
  rec(0, 0);
  return out;
}

/// Lattice given by its full order relation, with meet and join tables.
class ExplicitLattice {
 public:
  /// `le[i][j]` is true iff element i <= element j. Validates the partial
  /// order laws, existence of all meets and joins, and distributivity.
  static ExplicitLattice from_order(std::vector<std::string> labels,
                                    std::vector<std::vector<bool>> le) {
    const std::size_t n = labels.size();
    if (n == 0) throw Error(ErrorKind::EmptyInput, "lattice with no elements");
    if (n > kMaxExplicitLatticeSize) {
      throw Error(ErrorKind::TooLarge, std::to_string(n) + " lattice elements");
    }
    if (le.size() != n) throw Error(ErrorKind::ShapeMismatch, "order relation size");
    for (const auto& row : le) {
      if (row.size() != n) throw Error(ErrorKind::ShapeMismatch, "order relation row size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!le[i][i]) throw Error(ErrorKind::NotALattice, "order is not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && le[i][j] && le[j][i]) {
          throw Error(ErrorKind::NotALattice, "order is not antisymmetric");
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (le[i][j] && le[j][k] && !le[i][k]) {
            throw Error(ErrorKind::NotALattice, "order is not transitive");
          }
        }
      }
    }

    ExplicitLattice lat;
    lat.labels_ = std::move(labels);
    lat.le_ = std::move(le);
    lat.meet_.assign(n, std::vector<std::size_t>(n));
    lat.join_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const auto m = lat.extremal_bound(a, b, /*lower=*/true);
        const auto j = lat.extremal_bound(a, b, /*lower=*/false);
        lat.meet_[a][b] = lat.meet_[b][a] = m;
        lat.join_[a][b] = lat.join_[b][a] = j;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), lat.meet(x, z))) {
            throw Error(ErrorKind::NotDistributive,
                        lat.labels_[x] + ", " + lat.labels_[y] + ", " + lat.labels_[z]);
          }
        }
      }
    }
    lat.compute_lower_covers();
    return lat;
  }

  /// Distinct vectors under the componentwise order. The set must be closed
  /// under the lattice operations it inherits, or construction fails.
  template <LatticeVector V>
  static ExplicitLattice from_vectors(const std::vector<V>& elements) {
    std::vector<std::string> labels;
    for (const auto& e : elements) labels.push_back(to_string(e));
    std::vector<std::vector<bool>> le(elements.size(), std::vector<bool>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) le[i][j] = medlat::leq(elements[i], elements[j]);
    }
    return from_order(std::move(labels), std::move(le));
  }

  /// Product of chains 0..lengths[i], elements in lexicographic order.
  static ExplicitLattice product_of_chains(const std::vector<int>& lengths) {
    std::vector<IdealVector> points{IdealVector(std::vector<int>{})};
    for (int len : lengths) {
      std::vector<IdealVector> next;
      for (const auto& pt : points) {
        for (int v = 0; v <= len; ++v) {
          std::vector<int> raw(pt.begin(), pt.end());
          raw.push_back(v);
          next.emplace_back(std::move(raw));
        }
      }
      points = std::move(next);
    }
    return from_vectors(points);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool leq(std::size_t a, std::size_t b) const { return le_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  const std::vector<std::size_t>& lower_covers(std::size_t x) const { return lower_covers_[x]; }

  std::size_t bottom() const {
    std::size_t b = 0;
    for (std::size_t i = 1; i < size(); ++i) b = meet(b, i);
    return b;
  }

 private:
  std::size_t extremal_bound(std::size_t a, std::size_t b, bool lower) const {
    std::vector<std::size_t> bounds;
    for (std::size_t z = 0; z < size(); ++z) {
      if (lower ? (le_[z][a] && le_[z][b]) : (le_[a][z] && le_[b][z])) bounds.push_back(z);
    }
    for (auto cand : bounds) {
      bool best = true;
      for (auto z : bounds) {
        if (lower ? !le_[z][cand] : !le_[cand][z]) {
          best = false;
          break;
        }
      }
      if (best) return cand;
    }
    throw Error(ErrorKind::NotALattice, std::string(lower ? "no meet for " : "no join for ") +
                                            labels_[a] + " and " + labels_[b]);
  }

  void compute_lower_covers() {
    lower_covers_.assign(size(), {});
    for (std::size_t x = 0; x < size(); ++x) {
      for (std::size_t y = 0; y < size(); ++y) {
        if (y == x || !le_[y][x]) continue;
        bool direct = true;
        for (std::size_t z = 0; z < size() && direct; ++z) {
          if (z != x && z != y && le_[y][z] && le_[z][x]) direct = false;
        }
        if (direct) lower_covers_[x].push_back(y);
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> le_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
  std::vector<std::vector<std::size_t>> lower_covers_;
};

/// Indices (into the lattice) of the elements with exactly one lower cover.
inline std::vector<std::size_t> join_irreducible_indices(const ExplicitLattice& lat) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < lat.size(); ++x) {
    if (lat.lower_covers(x).size() == 1) out.push_back(x);
  }
  return out;
}

/// Sub-poset of join-irreducibles, order inherited from the lattice, labels
/// taken from the lattice.
inline Poset join_irreducibles(const ExplicitLattice& lat) {
  const auto idx = join_irreducible_indices(lat);
  std::vector<std::string> labels;
  for (auto i : idx) labels.push_back(lat.label(i));
  return Poset::from_relation(std::move(labels), [&](std::size_t a, std::size_t b) {
    return lat.leq(idx[a], idx[b]);
  });
}

/// The Birkhoff map x -> {j in J(L) : j <= x}, as masks over the poset
/// returned by join_irreducibles(lat), one per lattice element.
inline std::vector<ElementMask> birkhoff_masks(const ExplicitLattice& lat) {
  const auto idx = join_irreducible_indices(lat);
  if (idx.size() > kMaxPosetElements) {
    throw Error(ErrorKind::TooLarge, std::to_string(idx.size()) + " join-irreducibles");
  }
  std::vector<ElementMask> out(lat.size(), 0);
  for (std::size_t x = 0; x < lat.size(); ++x) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (lat.leq(idx[j], x)) out[x] |= bit(j);
    }
  }
  return out;
}

// Text format:
//   poset <n>
//   elem <label>        (n lines)
//   cover <lo> <hi>     (any number)
inline Poset parse_poset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> declared;
  std::vector<std::string> elems;
  std::vector<Poset::Cover> covers;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw.front() == '#') continue;
    std::string a, b, extra;
    if (kw == "poset") {
      long long n = -1;
      if (declared || !(ls >> n) || n < 0 || (ls >> extra)) {
        throw Error(ErrorKind::MalformedFile, "bad header: " + line);
      }
      declared = static_cast<std::size_t>(n);
    } else if (!declared) {
      throw Error(ErrorKind::MalformedFile, "missing 'poset <n>' header");
    } else if (kw == "elem") {
      if (!(ls >> a) || (ls >> extra)) throw Error(ErrorKind::MalformedFile, line);
      elems.push_back(a);
    } else if (kw == "cover") {
      if (!(ls >> a >> b) || (ls >> extra)) throw Error(ErrorKind::MalformedFile, line);
      covers.emplace_back(a, b);
    } else {
      throw Error(ErrorKind::MalformedFile, "unknown keyword: " + kw);
    }
  }
  if (!declared) throw Error(ErrorKind::MalformedFile, "missing 'poset <n>' header");
  if (elems.size() != *declared) {
    throw Error(ErrorKind::SizeMismatch, "header declares " + std::to_string(*declared) +
                                             " elements, found " + std::to_string(elems.size()));
  }
  return Poset::from_covers(std::move(elems), covers);
}

/// Canonical form: elements in stored order, Hasse covers by (upper, lower)
/// index.
inline std::string serialize_poset(const Poset& p) {
  std::string out = "poset " + std::to_string(p.size()) + "\n";
  for (const auto& l : p.labels()) out += "elem " + l + "\n";
  for (const auto& [lo, hi] : p.covers()) {
    out += "cover " + p.label(lo) + " " + p.label(hi) + "\n";
  }
  return out;
}

}  // namespace medlat
