// Copyright 2026 The countred Authors.
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

// Ground-truth counters. These are deliberately naive: every acceptance
// check compares a reduction against one of them.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "countred/exact.hpp"
#include "countred/graph.hpp"

namespace countred {

struct OracleBudget {
  std::size_t max_pm_vertices = 16;
  std::size_t max_is_vertices = 25;
  std::size_t max_forest_edges = 22;
  // Smaller side of a bipartite graph for bis_bruteforce.
  std::size_t max_bis_side = 25;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw BudgetError(what);
}

inline std::vector<std::uint64_t> adjacency_masks(const Multigraph& g) {
  require(g.vertex_count() < 64, "subset enumeration needs fewer than 64 vertices");
  std::vector<std::uint64_t> adj(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  return adj;
}

}  // namespace detail

// Perfect matchings, matching the lowest-index free vertex first. Parallel
// copies count as distinct edges.
inline Integer pm_bruteforce(const Multigraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.vertex_count();
  detail::require(n <= budget.max_pm_vertices,
                  "pm_bruteforce limited to " +
                      std::to_string(budget.max_pm_vertices) + " vertices");
  if (n % 2 == 1) return Integer(0);
  std::vector<std::vector<std::uint32_t>> mult(n, std::vector<std::uint32_t>(n, 0));
  for (const auto& e : g.edges()) {
    mult[e.u][e.v] += e.mult;
    mult[e.v][e.u] += e.mult;
  }
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> Integer {
    std::size_t v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) return Integer(1);
    used[v] = true;
    Integer total(0);
    for (std::size_t u = v + 1; u < n; ++u) {
      if (used[u] || mult[v][u] == 0) continue;
      used[u] = true;
      total += self(self) * mult[v][u];
      used[u] = false;
    }
    used[v] = false;
    return total;
  };
  return rec(rec);
}

// Independent sets by subset enumeration.
inline Integer is_bruteforce(const Multigraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.vertex_count();
  detail::require(n <= budget.max_is_vertices,
                  "is_bruteforce limited to " +
                      std::to_string(budget.max_is_vertices) + " vertices");
  const auto adj = detail::adjacency_masks(g);
  std::uint64_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    bool ok = true;
    for (std::uint64_t rest = s; rest && ok; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      ok = (adj[v] & s) == 0;
    }
    count += ok;
  }
  return Integer(static_cast<unsigned long>(count));
}

// Vertex covers by subset enumeration, checked edge by edge.
inline Integer vc_bruteforce(const Multigraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.vertex_count();
  detail::require(n <= budget.max_is_vertices,
                  "vc_bruteforce limited to " +
                      std::to_string(budget.max_is_vertices) + " vertices");
  const auto edge_masks = [&] {
    detail::adjacency_masks(g);  // size check
    std::vector<std::uint64_t> out;
    for (const auto& e : g.edges())
      out.push_back((std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v));
    return out;
  }();
  std::uint64_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    bool ok = true;
    for (auto m : edge_masks)
      if ((m & s) == 0) {
        ok = false;
        break;
      }
    count += ok;
  }
  return Integer(static_cast<unsigned long>(count));
}

// Acyclic subsets of edge copies, one union-find pass per subset.
inline Integer forests_bruteforce(const Multigraph& g,
                                  const OracleBudget& budget = {}) {
  std::vector<std::pair<Vertex, Vertex>> copies;
  for (const auto& e : g.edges())
    for (std::uint32_t c = 0; c < e.mult; ++c) copies.emplace_back(e.u, e.v);
  detail::require(copies.size() <= budget.max_forest_edges,
                  "forests_bruteforce limited to " +
                      std::to_string(budget.max_forest_edges) + " edges");
  std::uint64_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << copies.size();
  for (std::uint64_t s = 0; s < limit; ++s) {
    UnionFind uf(g.vertex_count());
    bool acyclic = true;
    for (std::size_t i = 0; i < copies.size() && acyclic; ++i)
      if (s >> i & 1U) acyclic = uf.unite(copies[i].first, copies[i].second);
    count += acyclic;
  }
  return Integer(static_cast<unsigned long>(count));
}

// Independent sets of a bipartite graph: every subset S of the smaller side
// is independent, and extends by any subset of the other side avoiding N(S).
// Subsets are walked in Gray-code order.
inline Integer bis_bruteforce(const Multigraph& g, const OracleBudget& budget = {}) {
  auto sides = two_coloring(g);
  if (!sides) throw std::invalid_argument("bis_bruteforce needs a bipartite graph");
  const std::size_t n = g.vertex_count();
  std::size_t ones = 0;
  for (auto s : *sides) ones += s;
  const std::uint8_t small = ones * 2 < n ? 1 : 0;
  std::vector<std::size_t> left_index(n, SIZE_MAX);
  std::vector<Vertex> left;
  for (Vertex v = 0; v < n; ++v)
    if ((*sides)[v] == small) {
      left_index[v] = left.size();
      left.push_back(v);
    }
  detail::require(left.size() <= budget.max_bis_side,
                  "bis_bruteforce limited to " +
                      std::to_string(budget.max_bis_side) +
                      " vertices on the smaller side");
  std::vector<std::vector<Vertex>> right_nbrs(left.size());
  for (const auto& e : g.edges()) {
    if (left_index[e.u] != SIZE_MAX)
      right_nbrs[left_index[e.u]].push_back(e.v);
    else
      right_nbrs[left_index[e.v]].push_back(e.u);
  }
  const std::size_t right_size = n - left.size();
  std::vector<std::uint32_t> hits(n, 0);
  std::size_t free_right = right_size;
  std::vector<std::uint64_t> hist(right_size + 1, 0);
  hist[free_right] += 1;
  std::uint64_t gray = 0;
  const std::uint64_t steps = std::uint64_t{1} << left.size();
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int bit = std::countr_zero(i);
    gray ^= std::uint64_t{1} << bit;
    const bool added = gray >> bit & 1U;
    for (Vertex r : right_nbrs[static_cast<std::size_t>(bit)]) {
      if (added) {
        if (hits[r]++ == 0) --free_right;
      } else {
        if (--hits[r] == 0) ++free_right;
      }
    }
    hist[free_right] += 1;
  }
  Integer total(0);
  for (std::size_t f = 0; f <= right_size; ++f)
    if (hist[f]) total += pow2(f) * static_cast<unsigned long>(hist[f]);
  return total;
}

// Independent sets of an arbitrary simple graph by branching on a vertex of
// maximum degree, #IS(G) = #IS(G - v) + #IS(G - N[v]), with components
// counted separately and paths and cycles closed off by their Fibonacci /
// Lucas counts. Fast when few vertices have degree above two, which is the
// shape of every gadget-substituted graph.
inline Integer is_branching(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  // fib[k] = #IS of a path on k vertices.
  std::vector<Integer> fib{Integer(1), Integer(2)};
  auto path_count = [&](std::size_t k) {
    while (fib.size() <= k) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    return fib[k];
  };

  std::vector<bool> alive(n, true);
  auto degree = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex u : adj[v]) d += alive[u];
    return d;
  };

  auto rec = [&](auto&& self, const std::vector<Vertex>& verts) -> Integer {
    // Split into components of the alive subgraph.
    std::vector<std::vector<Vertex>> comps;
    {
      std::vector<bool> seen(n, false);
      for (Vertex s : verts) {
        if (!alive[s] || seen[s]) continue;
        comps.emplace_back();
        auto& c = comps.back();
        c.push_back(s);
        seen[s] = true;
        for (std::size_t i = 0; i < c.size(); ++i)
          for (Vertex u : adj[c[i]])
            if (alive[u] && !seen[u]) {
              seen[u] = true;
              c.push_back(u);
            }
      }
    }
    Integer total(1);
    for (const auto& c : comps) {
      Vertex best = c[0];
      std::size_t best_deg = 0, edges2 = 0;
      for (Vertex v : c) {
        const std::size_t d = degree(v);
        edges2 += d;
        if (d > best_deg) {
          best_deg = d;
          best = v;
        }
      }
      if (best_deg <= 2) {
        const std::size_t k = c.size();
        if (edges2 / 2 + 1 == k) {
          total *= path_count(k);
        } else {
          // Cycle on k vertices: L_k = F(k-1) + F(k-3) in path counts.
          total *= path_count(k - 1) + path_count(k - 3);
        }
        continue;
      }
      alive[best] = false;
      Integer without = self(self, c);
      std::vector<Vertex> removed;
      for (Vertex u : adj[best])
        if (alive[u]) {
          alive[u] = false;
          removed.push_back(u);
        }
      Integer with = self(self, c);
      for (Vertex u : removed) alive[u] = true;
      alive[best] = true;
      total *= without + with;
    }
    return total;
  };
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  return rec(rec, all);
}

}  // namespace countred
