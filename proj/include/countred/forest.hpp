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

// Forest polynomials F(G; w) = sum over acyclic edge sets A of prod_{e in A}
// w_e, the bridge to the Tutte polynomial on the line y = 1, and the apex
// construction that encodes perfect matchings.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "countred/exact.hpp"
#include "countred/graph.hpp"
#include "countred/kronecker.hpp"
#include "countred/polynomial.hpp"

namespace countred {

inline constexpr std::size_t kForestEdgeGuard = 22;
inline constexpr std::size_t kCoreVertexGuard = 16;

struct ForestPolyResult {
  SparsePolynomial poly;
  Integer forest_count;          // number of forests, i.e. F at all-ones
  std::size_t max_forest_size = 0;
};

namespace detail {

struct EdgeCopy {
  Vertex u;
  Vertex v;
  std::size_t record;
};

inline std::vector<EdgeCopy> expand_copies(const Multigraph& g,
                                           std::size_t guard) {
  if (g.total_edges() > guard)
    throw BudgetError("forest enumeration limited to " + std::to_string(guard) +
                      " edges, graph has " + std::to_string(g.total_edges()) +
                      "; use the series-parallel evaluator");
  std::vector<EdgeCopy> copies;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    for (std::uint32_t c = 0; c < e.mult; ++c) copies.push_back({e.u, e.v, id});
  }
  return copies;
}

// Depth-first enumeration of all forests; visit(uf, chosen) at each leaf.
template <typename Visit>
void for_each_forest(const Multigraph& g, std::size_t guard, Visit&& visit) {
  const auto copies = expand_copies(g, guard);
  UnionFind uf(g.vertex_count());
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == copies.size()) {
      visit(static_cast<const UnionFind&>(uf),
            static_cast<const std::vector<std::size_t>&>(chosen));
      return;
    }
    self(self, i + 1);
    if (uf.unite(copies[i].u, copies[i].v)) {
      chosen.push_back(copies[i].record);
      self(self, i + 1);
      chosen.pop_back();
      uf.undo();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Enumerates every acyclic subset of edge copies (parallel copies counted
// individually). Symbolic weights become variables in order of first
// appearance; numeric weights are folded into coefficients.
inline ForestPolyResult forest_poly_bruteforce(const Multigraph& g,
                                               const WeightAssignment& w,
                                               std::size_t guard = kForestEdgeGuard) {
  w.check_covers(g);
  std::vector<std::string> vars;
  std::vector<std::size_t> var_of(g.edge_count(), SIZE_MAX);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (const auto* name = std::get_if<std::string>(&w[id])) {
      auto it = std::find(vars.begin(), vars.end(), *name);
      var_of[id] = static_cast<std::size_t>(it - vars.begin());
      if (it == vars.end()) vars.push_back(*name);
    }
  }
  ForestPolyResult result{SparsePolynomial(vars), Integer(0), 0};
  std::map<Exponents, Rational> acc;
  Exponents e(vars.size());
  detail::for_each_forest(g, guard, [&](const UnionFind&,
                                        const std::vector<std::size_t>& chosen) {
    std::fill(e.begin(), e.end(), 0);
    Rational coeff(1);
    for (std::size_t record : chosen) {
      if (var_of[record] != SIZE_MAX)
        ++e[var_of[record]];
      else
        coeff *= std::get<Rational>(w[record]);
    }
    result.forest_count += 1;
    result.max_forest_size = std::max(result.max_forest_size, chosen.size());
    if (coeff != 0) acc[e] += coeff;
  });
  for (const auto& [exps, c] : acc) result.poly.add_term(exps, c);
  return result;
}

// (w + 1)^k - w^k, the per-edge factor of a k-stretch.
inline Rational stretch_prefactor(const Rational& w, std::uint32_t k) {
  return pow(Rational(w + 1), k) - pow(w, k);
}

// g_k(w) = w^k / ((w + 1)^k - w^k).
inline Rational g_k(const Rational& w, std::uint32_t k) {
  Rational den = stretch_prefactor(w, k);
  if (den == 0)
    throw DomainError("g_" + std::to_string(k) + " is undefined at w = " +
                      to_string(w));
  return pow(w, k) / den;
}

namespace detail {

// Weighted spanning-tree sum of the subgraph induced by `verts` via the
// matrix-tree theorem (exact for arbitrary weights).
inline Rational spanning_tree_sum(const std::vector<std::vector<Rational>>& w,
                                  const std::vector<std::size_t>& verts) {
  const std::size_t s = verts.size();
  if (s <= 1) return Rational(1);
  RationalMatrix lap(s - 1, s - 1);
  for (std::size_t i = 1; i < s; ++i) {
    Rational diag(0);
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) diag += w[verts[i]][verts[j]];
    lap(i - 1, i - 1) = diag;
    for (std::size_t j = 1; j < s; ++j)
      if (j != i) lap(i - 1, j - 1) = -w[verts[i]][verts[j]];
  }
  return determinant(std::move(lap));
}

// F of a small connected weighted simple graph (dense weight matrix):
// a forest is a partition of the vertices with a spanning tree on each part,
// so F(S) = sum_{T subset S, min(S) in T} tau(T) * F(S \ T).
inline Rational forest_value_partition_dp(
    const std::vector<std::vector<Rational>>& w) {
  const std::size_t n = w.size();
  if (n > kCoreVertexGuard)
    throw BudgetError("irreducible core has " + std::to_string(n) +
                      " vertices, limit is " + std::to_string(kCoreVertexGuard));
  if (n == 0) return Rational(1);
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<std::uint32_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && w[i][j] != 0) nbr[i] |= 1U << j;

  auto connected = [&](std::size_t mask) {
    std::uint32_t start = static_cast<std::uint32_t>(mask & (~mask + 1));
    std::uint32_t reach = start, frontier = start;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (frontier >> i & 1U) next |= nbr[i];
      next &= static_cast<std::uint32_t>(mask) & ~reach;
      reach |= next;
      frontier = next;
    }
    return reach == mask;
  };

  std::vector<Rational> tau(full + 1, Rational(0));
  std::vector<std::size_t> verts;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (!connected(mask)) continue;
    verts.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) verts.push_back(i);
    tau[mask] = spanning_tree_sum(w, verts);
  }

  std::vector<Rational> f(full + 1, Rational(0));
  f[0] = 1;
  for (std::size_t s = 1; s <= full; ++s) {
    const std::size_t low = s & (~s + 1);
    const std::size_t rest = s ^ low;
    Rational acc(0);
    // T = low | sub for every sub of rest.
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t t = low | sub;
      if (tau[t] != 0 && f[s ^ t] != 0) acc += tau[t] * f[s ^ t];
      if (sub == 0) break;
    }
    f[s] = std::move(acc);
  }
  return f[full];
}

// Mutable weighted simple graph used by the reduction engine; a bundle of
// parallel edges is stored as one entry holding the sum of its weights.
class ReducibleGraph {
 public:
  ReducibleGraph(const Multigraph& g, const WeightAssignment& w)
      : adj_(g.vertex_count()), alive_(g.vertex_count(), true) {
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      const auto& e = g.edge(id);
      add(e.u, e.v, std::get<Rational>(w[id]) * e.mult);
    }
  }

  // Returns F of the whole graph.
  Rational evaluate() {
    Rational factor(1);
    bool progress = true;
    while (progress && factor != 0) {
      progress = false;
      for (Vertex v = 0; v < adj_.size() && factor != 0; ++v) {
        if (!alive_[v]) continue;
        const std::size_t deg = adj_[v].size();
        if (deg == 0) {
          alive_[v] = false;
          progress = true;
        } else if (deg == 1) {
          // Pendant edge: either in the forest or not, independently.
          auto [u, a] = *adj_[v].begin();
          factor *= a + 1;
          remove_vertex(v);
          progress = true;
        } else if (deg == 2 && reduce_chain(v, factor)) {
          progress = true;
        }
      }
    }
    if (factor == 0) return factor;
    return factor * evaluate_core();
  }

 private:
  void add(Vertex u, Vertex v, const Rational& weight) {
    Rational& slot = adj_[u][v];
    slot += weight;
    if (slot == 0) {
      adj_[u].erase(v);
      adj_[v].erase(u);
    } else {
      adj_[v][u] = slot;
    }
  }

  void remove_vertex(Vertex v) {
    for (const auto& [u, a] : adj_[v]) adj_[u].erase(v);
    adj_[v].clear();
    alive_[v] = false;
  }

  void contract(Vertex keep, Vertex gone) {
    const auto nbrs = adj_[gone];
    remove_vertex(gone);
    adj_[keep].erase(gone);
    for (const auto& [u, a] : nbrs)
      if (u != keep) add(keep, u, a);
  }

  // Collapses the maximal path of degree-2 vertices through v into a single
  // edge. A path with weights a_1..a_r contributes prod(1 + a_i) - prod(a_i)
  // from forests that miss at least one path edge and prod(a_i) from those
  // that use all of it, so
  //   F(G) = Q * F(G' with edge weight P / Q),
  //   P = prod a_i,  Q = prod(1 + a_i) - prod a_i.
  // When Q = 0 and the ends s, t differ, only forests using the whole path
  // survive: F(G) = P * F((G - path) / {s = t}), with s-t edges dropped as
  // loops.
  bool reduce_chain(Vertex v, Rational& factor) {
    std::vector<Vertex> inner{v};
    std::vector<Rational> weights;
    auto it = adj_[v].begin();
    Vertex left = it->first;
    Rational left_w = it->second;
    ++it;
    Vertex right = it->first;
    Rational right_w = it->second;
    weights.push_back(left_w);
    weights.push_back(right_w);

    auto walk = [&](Vertex from, Vertex at, std::vector<Vertex>& seen,
                    std::vector<Rational>& ws) {
      while (at != v && adj_[at].size() == 2) {
        seen.push_back(at);
        auto jt = adj_[at].begin();
        if (jt->first == from) ++jt;
        ws.push_back(jt->second);
        from = at;
        at = jt->first;
      }
      return at;
    };

    std::vector<Vertex> left_inner, right_inner;
    std::vector<Rational> left_ws, right_ws;
    Vertex end_left = walk(v, left, left_inner, left_ws);
    Vertex end_right = end_left == v ? v : walk(v, right, right_inner, right_ws);
    // Walking all the way round re-traverses the (v, right) edge.
    if (end_left == v) left_ws.pop_back();

    for (auto x : left_inner) inner.push_back(x);
    for (auto x : right_inner) inner.push_back(x);
    for (auto& x : left_ws) weights.push_back(x);
    for (auto& x : right_ws) weights.push_back(x);

    Rational prod_plus(1), prod(1);
    for (const auto& a : weights) {
      prod_plus *= a + 1;
      prod *= a;
    }
    const Rational q = prod_plus - prod;

    if (end_left == v) {
      // An isolated cycle made only of degree-2 vertices.
      factor *= q;
      for (Vertex x : inner) remove_vertex(x);
      return true;
    }
    if (end_left == end_right) {
      // A cycle hanging off a single vertex.
      factor *= q;
      for (Vertex x : inner) remove_vertex(x);
      return true;
    }
    if (q == 0) {
      factor *= prod;
      for (Vertex x : inner) remove_vertex(x);
      contract(end_left, end_right);
      return true;
    }
    factor *= q;
    for (Vertex x : inner) remove_vertex(x);
    add(end_left, end_right, prod / q);
    return true;
  }

  Rational evaluate_core() {
    // Split the survivors into connected components; F is multiplicative.
    std::vector<int> comp(adj_.size(), -1);
    Rational total(1);
    for (Vertex s = 0; s < adj_.size(); ++s) {
      if (!alive_[s] || comp[s] != -1) continue;
      std::vector<Vertex> members{s};
      comp[s] = 0;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (const auto& [u, a] : adj_[members[i]])
          if (comp[u] == -1) {
            comp[u] = 0;
            members.push_back(u);
          }
      std::sort(members.begin(), members.end());
      std::vector<std::vector<Rational>> w(
          members.size(), std::vector<Rational>(members.size(), Rational(0)));
      for (std::size_t i = 0; i < members.size(); ++i)
        for (const auto& [u, a] : adj_[members[i]]) {
          auto j = static_cast<std::size_t>(
              std::lower_bound(members.begin(), members.end(), u) -
              members.begin());
          w[i][j] = a;
        }
      total *= forest_value_partition_dp(w);
      if (total == 0) break;
    }
    return total;
  }

  std::vector<std::map<Vertex, Rational>> adj_;
  std::vector<bool> alive_;
};

}  // namespace detail

// Exact F(g; w) for rational weights. Parallel bundles are summed, pendant
// edges and chains of degree-2 vertices are reduced, and whatever remains is
// evaluated component by component with a vertex-partition / matrix-tree
// dynamic program.
inline Rational forest_poly_sp(const Multigraph& g, const WeightAssignment& w) {
  w.check_covers(g);
  if (!w.is_numeric())
    throw std::invalid_argument("forest_poly_sp needs rational weights");
  return detail::ReducibleGraph(g, w).evaluate();
}

// Exact F(g; w) for rational weights by plain forest enumeration.
inline Rational forest_value_bruteforce(const Multigraph& g,
                                        const WeightAssignment& w,
                                        std::size_t guard = kForestEdgeGuard) {
  return forest_poly_bruteforce(g, w, guard).poly.constant_term();
}

// Exact F(g; w) by a left-to-right sweep over edge copies that tracks how the
// chosen edges connect the vertices still to be touched (the frontier).
// Cost depends on the frontier width of the edge order, not on the edge
// count, so long stretched paths are cheap. Shares no code with the
// series-parallel engine and serves as its cross-check.
inline Rational forest_value_frontier(const Multigraph& g,
                                      const WeightAssignment& w) {
  w.check_covers(g);
  if (!w.is_numeric())
    throw std::invalid_argument("forest_value_frontier needs rational weights");
  struct Copy {
    Vertex u, v;
    const Rational* weight;
  };
  std::vector<Copy> copies;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    for (std::uint32_t c = 0; c < e.mult; ++c)
      copies.push_back({e.u, e.v, &std::get<Rational>(w[id])});
  }
  std::vector<std::size_t> last(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < copies.size(); ++i) {
    last[copies[i].u] = i;
    last[copies[i].v] = i;
  }

  using Labels = std::vector<std::uint8_t>;
  auto normalize = [](Labels& labels) {
    std::uint8_t map[256];
    std::fill(std::begin(map), std::end(map), 0xFF);
    std::uint8_t next = 0;
    for (auto& l : labels) {
      if (map[l] == 0xFF) map[l] = next++;
      l = map[l];
    }
  };

  std::vector<Vertex> frontier;
  std::map<Labels, Rational> states{{Labels{}, Rational(1)}};
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto& c = copies[i];
    for (Vertex x : {c.u, c.v}) {
      if (std::find(frontier.begin(), frontier.end(), x) != frontier.end())
        continue;
      if (frontier.size() >= 250)
        throw BudgetError("frontier too wide for forest_value_frontier");
      frontier.push_back(x);
      std::map<Labels, Rational> grown;
      for (auto& [labels, val] : states) {
        Labels l = labels;
        l.push_back(static_cast<std::uint8_t>(frontier.size() - 1));
        normalize(l);
        grown[l] += val;
      }
      states = std::move(grown);
    }
    const auto pu = static_cast<std::size_t>(
        std::find(frontier.begin(), frontier.end(), c.u) - frontier.begin());
    const auto pv = static_cast<std::size_t>(
        std::find(frontier.begin(), frontier.end(), c.v) - frontier.begin());

    std::map<Labels, Rational> next;
    for (const auto& [labels, val] : states) {
      next[labels] += val;
      if (labels[pu] == labels[pv] || *c.weight == 0) continue;
      Labels joined = labels;
      const std::uint8_t from = joined[pv], to = joined[pu];
      for (auto& l : joined)
        if (l == from) l = to;
      normalize(joined);
      next[joined] += val * *c.weight;
    }

    // Forget vertices that no later edge touches.
    std::vector<std::size_t> keep;
    for (std::size_t p = 0; p < frontier.size(); ++p)
      if (last[frontier[p]] != i) keep.push_back(p);
    if (keep.size() != frontier.size()) {
      std::map<Labels, Rational> shrunk;
      for (const auto& [labels, val] : next) {
        Labels l;
        for (auto p : keep) l.push_back(labels[p]);
        normalize(l);
        shrunk[l] += val;
      }
      next = std::move(shrunk);
      std::vector<Vertex> f;
      for (auto p : keep) f.push_back(frontier[p]);
      frontier = std::move(f);
    }
    states = std::move(next);
  }
  Rational total(0);
  for (const auto& [labels, val] : states) total += val;
  return total;
}

// T(g; x, 1) = (x - 1)^{|V| - k(E)} * F(g; 1 / (x - 1)).
inline Rational tutte_y1(const Multigraph& g, const Rational& x) {
  if (x == 1)
    throw DomainError(
        "T(G; x, 1) is evaluated through F(G; 1/(x-1)), which needs x != 1");
  const Rational t = 1 / (x - 1);
  const Rational f = forest_poly_sp(g, WeightAssignment::uniform(g, t));
  return pow(Rational(x - 1), g.vertex_count() - component_count(g)) * f;
}

// Right-hand side of the apex identity as a polynomial in w:
//   sum_{A forest of g} w^{|A|} prod_{T in c(A)} (1 + sum_{v in T} z_v),
// where c(A) lists the vertex sets of the trees of A, singletons included.
inline SparsePolynomial apex_rhs(const Multigraph& g,
                                 const std::vector<Rational>& zvals,
                                 std::size_t guard = kForestEdgeGuard) {
  if (zvals.size() != g.vertex_count())
    throw std::invalid_argument("apex_rhs needs one z value per vertex");
  const std::size_t n = g.vertex_count();
  SparsePolynomial out({"w"});
  std::vector<Rational> tree_sum(n);
  detail::for_each_forest(g, guard, [&](const UnionFind& uf,
                                        const std::vector<std::size_t>& chosen) {
    for (auto& s : tree_sum) s = 1;
    for (std::size_t v = 0; v < n; ++v) tree_sum[uf.find(v)] += zvals[v];
    Rational prod(1);
    for (std::size_t v = 0; v < n && prod != 0; ++v)
      if (uf.find(v) == v) prod *= tree_sum[v];
    out.add_term({static_cast<std::uint32_t>(chosen.size())}, prod);
  });
  return out;
}

inline Rational apex_rhs(const Multigraph& g, const Rational& wval,
                         const std::vector<Rational>& zvals,
                         std::size_t guard = kForestEdgeGuard) {
  return apex_rhs(g, zvals, guard).eval({{"w", wval}});
}

struct PmExtraction {
  Integer count;
  bool odd_warning = false;
};

// (-1)^{n/2} [w^{n/2}] of F(apex(g)) with every apex weight set to -1. Each
// tree of a perfect matching contributes 1 - 2 = -1, hence the sign.
inline PmExtraction pm_coefficient_extract(const SparsePolynomial& apex_poly,
                                           std::size_t n) {
  if (n % 2 == 1) return {Integer(0), true};
  if (apex_poly.arity() != 1)
    throw std::invalid_argument("expected a univariate polynomial in w");
  const auto half = static_cast<std::uint32_t>(n / 2);
  Rational c = apex_poly.coefficient({half});
  if (half % 2 == 1) c = -c;
  if (!is_integer(c))
    throw std::logic_error("perfect-matching coefficient is not an integer: " +
                           to_string(c));
  return {c.get_num(), false};
}

}  // namespace countred
