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

// Instance families for property checks. Randomness is drawn from
// std::mt19937_64 by plain modular reduction so that a seed reproduces the
// same instances on every platform.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "countred/csp.hpp"
#include "countred/exact.hpp"
#include "countred/graph.hpp"

namespace countred {

using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

// Each of the n(n-1)/2 pairs becomes an edge with probability num/den.
inline Multigraph random_graph(Rng& rng, std::size_t n, std::uint64_t num,
                               std::uint64_t den) {
  Multigraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (uniform_below(rng, den) < num) g.add_edge(u, v);
  return g;
}

// Exactly m distinct edges (m at most n(n-1)/2).
inline Multigraph random_graph_edges(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  if (m > pairs.size()) throw std::invalid_argument("too many edges requested");
  for (std::size_t i = 0; i < m; ++i)
    std::swap(pairs[i], pairs[i + uniform_below(rng, pairs.size() - i)]);
  Multigraph g(n);
  std::sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t i = 0; i < m; ++i) g.add_edge(pairs[i].first, pairs[i].second);
  return g;
}

// Sides are {0..n1-1} and {n1..n1+n2-1}.
inline Multigraph random_bipartite(Rng& rng, std::size_t n1, std::size_t n2,
                                   std::uint64_t num, std::uint64_t den) {
  Multigraph g(n1 + n2);
  for (Vertex u = 0; u < n1; ++u)
    for (Vertex v = 0; v < n2; ++v)
      if (uniform_below(rng, den) < num) g.add_edge(u, static_cast<Vertex>(n1 + v));
  return g;
}

// Small nonzero rational num/den with |num| <= 3, den in 1..3.
inline Rational random_rational(Rng& rng) {
  long num = 0;
  while (num == 0) num = static_cast<long>(uniform_below(rng, 7)) - 3;
  const long den = static_cast<long>(uniform_below(rng, 3)) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {

inline std::vector<std::vector<bool>> adjacency_matrix(const Multigraph& g) {
  std::vector<std::vector<bool>> a(g.vertex_count(), std::vector<bool>(g.vertex_count()));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

inline std::vector<std::size_t> degrees(const Multigraph& g) {
  std::vector<std::size_t> d(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

}  // namespace detail

// Simple graphs only. Backtracking over vertex images, pruned by degree and
// adjacency to the vertices already placed.
inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const auto da = detail::degrees(a), db = detail::degrees(b);
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  const auto ma = detail::adjacency_matrix(a), mb = detail::adjacency_matrix(b);

  // Place vertices of a in BFS order so adjacency checks bite early.
  std::vector<Vertex> order;
  std::vector<bool> queued(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (queued[s]) continue;
    queued[s] = true;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i)
      for (Vertex u = 0; u < n; ++u)
        if (ma[order[i]][u] && !queued[u]) {
          queued[u] = true;
          order.push_back(u);
        }
  }
  std::vector<Vertex> image(n);
  std::vector<bool> used(n, false);
  auto place = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    const Vertex v = order[i];
    for (Vertex c = 0; c < n; ++c) {
      if (used[c] || db[c] != da[v]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = ma[v][order[j]] == mb[c][image[order[j]]];
      if (!ok) continue;
      used[c] = true;
      image[v] = c;
      if (self(self, i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  return place(place, 0);
}

namespace detail {

// Keeps one representative per isomorphism class.
class IsoClasses {
 public:
  bool insert(const Multigraph& g) {
    auto key = degrees(g);
    std::sort(key.begin(), key.end());
    auto& bucket = buckets_[key];
    for (std::size_t idx : bucket)
      if (isomorphic(graphs_[idx], g)) return false;
    bucket.push_back(graphs_.size());
    graphs_.push_back(g);
    return true;
  }

  const std::vector<Multigraph>& graphs() const { return graphs_; }

 private:
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets_;
  std::vector<Multigraph> graphs_;
};

}  // namespace detail

// Every simple graph with 1..max_edges edges and no isolated vertex, one per
// isomorphism class, ordered by edge count. Each graph arises from one with
// an edge fewer by joining two old vertices, an old and a new vertex, or two
// new vertices.
inline std::vector<Multigraph> graphs_up_to_edges(std::size_t max_edges) {
  std::vector<Multigraph> out;
  std::vector<Multigraph> level{Multigraph(0)};
  for (std::size_t m = 1; m <= max_edges; ++m) {
    detail::IsoClasses next;
    for (const auto& g : level) {
      const std::size_t n = g.vertex_count();
      const auto adj = detail::adjacency_matrix(g);
      auto extend = [&](Vertex u, Vertex v, std::size_t new_n) {
        Multigraph h(new_n);
        for (const auto& e : g.edges()) h.add_edge(e.u, e.v);
        h.add_edge(u, v);
        next.insert(h);
      };
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (!adj[u][v]) extend(u, v, n);
      for (Vertex u = 0; u < n; ++u) extend(u, static_cast<Vertex>(n), n + 1);
      extend(static_cast<Vertex>(n), static_cast<Vertex>(n + 1), n + 2);
    }
    level = next.graphs();
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Every connected simple graph on n vertices (n <= 7), one per isomorphism
// class.
inline std::vector<Multigraph> connected_graphs(std::size_t n) {
  if (n > 7) throw BudgetError("connected_graphs enumerates labelled graphs; n <= 7");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  detail::IsoClasses classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    if (n > 1 && static_cast<std::size_t>(std::popcount(mask)) + 1 < n) continue;
    Multigraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) g.add_edge(pairs[i].first, pairs[i].second);
    if (component_count(g) == 1) classes.insert(g);
  }
  return classes.graphs();
}

// Solution set of a random linear system over GF(2) in `arity` unknowns.
inline BooleanRelation random_affine_relation(Rng& rng, std::size_t arity) {
  const std::uint64_t width = std::uint64_t{1} << arity;
  const std::size_t equations = uniform_below(rng, arity + 1);
  std::vector<std::pair<std::uint64_t, bool>> eqs;
  for (std::size_t i = 0; i < equations; ++i)
    eqs.emplace_back(uniform_below(rng, width), uniform_below(rng, 2) == 1);
  std::set<std::uint64_t> tuples;
  for (std::uint64_t t = 0; t < width; ++t) {
    bool ok = true;
    for (const auto& [c, b] : eqs) ok = ok && ((std::popcount(c & t) & 1) == 1) == b;
    if (ok) tuples.insert(t);
  }
  return BooleanRelation(arity, std::move(tuples));
}

// n variables, a few affine relations of arity 1..4, and random scopes over
// distinct variables.
inline CspInstance random_affine_instance(Rng& rng, std::size_t n) {
  CspInstance inst;
  inst.n = n;
  const std::size_t rels = 1 + uniform_below(rng, 3);
  for (std::size_t i = 0; i < rels; ++i) {
    const std::size_t arity = 1 + uniform_below(rng, std::min<std::size_t>(4, n));
    inst.relations.push_back(random_affine_relation(rng, arity));
  }
  const std::size_t cons = uniform_below(rng, n + 1);
  std::vector<std::size_t> vars(n);
  for (std::size_t i = 0; i < cons; ++i) {
    const std::size_t r = uniform_below(rng, rels);
    for (std::size_t v = 0; v < n; ++v) vars[v] = v;
    for (std::size_t p = 0; p < inst.relations[r].arity(); ++p)
      std::swap(vars[p], vars[p + uniform_below(rng, n - p)]);
    inst.constraints.push_back(
        {r, std::vector<std::size_t>(vars.begin(),
                                     vars.begin() + static_cast<std::ptrdiff_t>(
                                                        inst.relations[r].arity()))});
  }
  return inst;
}

}  // namespace countred
