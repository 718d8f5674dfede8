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

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace medlat {

inline constexpr int kUnmatched = -1;

/// Bipartite graph with left vertices 0..left-1 and right vertices
/// 0..right-1. Adjacency lists are scanned in stored order, so callers that
/// push neighbours in ascending index get smallest-index tie-breaking.
struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<int>> adj;

  BipartiteGraph() = default;
  BipartiteGraph(std::size_t l, std::size_t r) : left(l), right(r), adj(l) {}

  void add_edge(int u, int v) { adj[static_cast<std::size_t>(u)].push_back(v); }
};

struct Matching {
  std::vector<int> left_mate;   // right vertex or kUnmatched
  std::vector<int> right_mate;  // left vertex or kUnmatched
  std::size_t size = 0;

  bool perfect(const BipartiteGraph& g) const {
    return size == g.left && size == g.right;
  }
};

// Hopcroft-Karp: BFS layers from free left vertices, then vertex-disjoint
// shortest augmenting paths by DFS along the layering.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        dist_(g.left),
        next_edge_(g.left) {
    m_.left_mate.assign(g.left, kUnmatched);
    m_.right_mate.assign(g.right, kUnmatched);
  }

  Matching run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::size_t u = 0; u < g_.left; ++u) {
        if (m_.left_mate[u] == kUnmatched && dfs(static_cast<int>(u))) ++m_.size;
      }
    }
    return m_;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> q;
    for (std::size_t u = 0; u < g_.left; ++u) {
      if (m_.left_mate[u] == kUnmatched) {
        dist_[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g_.adj[static_cast<std::size_t>(u)]) {
        const int w = m_.right_mate[static_cast<std::size_t>(v)];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    const auto su = static_cast<std::size_t>(u);
    const auto& nbrs = g_.adj[su];
    for (auto& i = next_edge_[su]; i < nbrs.size(); ++i) {
      const int v = nbrs[i];
      const int w = m_.right_mate[static_cast<std::size_t>(v)];
      if (w == kUnmatched ||
          (dist_[static_cast<std::size_t>(w)] == dist_[su] + 1 && dfs(w))) {
        m_.left_mate[su] = v;
        m_.right_mate[static_cast<std::size_t>(v)] = u;
        ++i;
        return true;
      }
    }
    dist_[su] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  Matching m_;
  std::vector<int> dist_;
  std::vector<std::size_t> next_edge_;
};

inline Matching maximum_matching(const BipartiteGraph& g) {
  return HopcroftKarp(g).run();
}

/// Left and right vertices reachable by alternating paths that start at the
/// unmatched left vertices of a maximum matching.
struct AlternatingReach {
  std::vector<bool> left;
  std::vector<bool> right;
};

inline AlternatingReach alternating_reach(const BipartiteGraph& g,
                                          const Matching& m) {
  AlternatingReach r{std::vector<bool>(g.left, false),
                     std::vector<bool>(g.right, false)};
  std::queue<int> q;
  for (std::size_t u = 0; u < g.left; ++u) {
    if (m.left_mate[u] == kUnmatched) {
      r.left[u] = true;
      q.push(static_cast<int>(u));
    }
  }
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      const auto sv = static_cast<std::size_t>(v);
      if (r.right[sv]) continue;
      r.right[sv] = true;
      const int w = m.right_mate[sv];
      if (w != kUnmatched && !r.left[static_cast<std::size_t>(w)]) {
        r.left[static_cast<std::size_t>(w)] = true;
        q.push(w);
      }
    }
  }
  return r;
}

}  // namespace medlat
