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

// Counting independent sets of a general graph with an oracle that only
// counts vertex covers of bipartite graphs.
//
// Edges are split into b blocks of at most d. For every l in
// {1..(d+1)^3}^b the graph G_l replaces each edge of block i by the gadget
// H_{l_i}. Conditioning on S = C cap V(G), the gadgets are independent, and
//
//   N_l = sum_t x_t prod_i (2^{t_i1} 3^{t_i2} 5^{t_i3})^{l_i},
//
// where x_t counts vertex sets of type t. The system matrix is the b-th
// Kronecker power of one Vandermonde factor, so x is recovered exactly and
// #VC(G) = #IS(G) is the mass on types whose first column is zero.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "countred/exact.hpp"
#include "countred/graph.hpp"
#include "countred/kronecker.hpp"
#include "countred/oracles.hpp"
#include "countred/transcript.hpp"

namespace countred {

struct GadgetCounts {
  Integer neither;
  Integer one;  // containing one named endpoint
  Integer both;

  friend bool operator==(const GadgetCounts&, const GadgetCounts&) = default;
};

inline GadgetCounts gadget_counts(std::uint32_t ell) {
  if (ell == 0) throw std::invalid_argument("gadget size must be >= 1");
  return {pow(Integer(2), ell), pow(Integer(3), ell), pow(Integer(5), ell)};
}

// H_ell as a standalone graph with endpoints u = 0 and v = 1.
inline Multigraph gadget_graph(std::uint32_t ell) {
  Multigraph k2(2);
  k2.add_edge(0, 1);
  return substitute_gadget(k2, partition_edges(k2, 1), {ell});
}

// Enumerates the vertex covers of H_ell and buckets them by which endpoints
// they contain (the "one" bucket counts covers containing u but not v).
inline GadgetCounts gadget_counts_bruteforce(std::uint32_t ell) {
  const Multigraph h = gadget_graph(ell);
  const std::size_t n = h.vertex_count();
  if (n > 25) throw BudgetError("gadget too large to enumerate");
  std::vector<std::uint64_t> masks;
  for (const auto& e : h.edges())
    masks.push_back((std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v));
  std::uint64_t buckets[4] = {0, 0, 0, 0};
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool cover = true;
    for (auto m : masks)
      if ((m & s) == 0) {
        cover = false;
        break;
      }
    if (cover) ++buckets[s & 3U];
  }
  return {Integer(static_cast<unsigned long>(buckets[0])),
          Integer(static_cast<unsigned long>(buckets[1])),
          Integer(static_cast<unsigned long>(buckets[3]))};
}

// Per block i: (#edges with |e cap S| = 0, = 1, = 2).
struct TypeMatrix {
  std::vector<Tau> rows;

  bool first_column_zero() const {
    for (const auto& r : rows)
      if (r[0] != 0) return false;
    return true;
  }

  friend bool operator==(const TypeMatrix&, const TypeMatrix&) = default;
};

inline TypeMatrix type_of(const std::vector<bool>& in_set, const Multigraph& g,
                          const BlockPartition& part) {
  if (in_set.size() < g.vertex_count())
    throw std::invalid_argument("membership vector shorter than the vertex set");
  TypeMatrix t;
  t.rows.assign(part.size(), Tau{0, 0, 0});
  for (std::size_t i = 0; i < part.size(); ++i)
    for (EdgeId id : part.blocks[i]) {
      const auto& e = g.edge(id);
      ++t.rows[i][static_cast<std::size_t>(in_set[e.u]) + in_set[e.v]];
    }
  return t;
}

// Decodes a flat solution index into its type matrix.
inline TypeMatrix type_at(const KroneckerSolution& sol, std::size_t flat) {
  const VandermondeFactor factor(sol.d);
  TypeMatrix t;
  for (auto col : sol.columns(flat)) t.rows.push_back(factor.tau(col));
  return t;
}

inline constexpr std::size_t kConditionedVertexGuard = 20;

// N_l evaluated from the conditioning argument: sum over all S subset V(g)
// of prod over edges of the gadget count selected by |e cap S|.
inline Integer conditioned_vc(const Multigraph& g, const BlockPartition& part,
                              const std::vector<std::uint32_t>& ell) {
  const std::size_t n = g.vertex_count();
  if (n > kConditionedVertexGuard)
    throw BudgetError("conditioned_vc limited to " +
                      std::to_string(kConditionedVertexGuard) + " vertices");
  if (ell.size() != part.size())
    throw std::invalid_argument("need one gadget size per block");
  if (!part.valid_for(g)) throw std::invalid_argument("partition does not match graph");
  std::vector<std::array<Integer, 3>> factor(part.size());
  std::vector<std::size_t> block_of(g.edge_count());
  for (std::size_t i = 0; i < part.size(); ++i) {
    const auto c = gadget_counts(ell[i]);
    factor[i] = {c.neither, c.one, c.both};
    for (EdgeId id : part.blocks[i]) block_of[id] = i;
  }
  Integer total(0);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Integer term(1);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      const auto& e = g.edge(id);
      const std::size_t hits = (s >> e.u & 1U) + (s >> e.v & 1U);
      term *= factor[block_of[id]][hits];
    }
    total += term;
  }
  return total;
}

struct GadgetQuery {
  const Multigraph& original;
  const BlockPartition& part;
  const std::vector<std::uint32_t>& ell;
  const Multigraph& gadget_graph;
};

// Returns #VC of the bipartite query graph.
using BipartiteOracle = std::function<Integer(const GadgetQuery&)>;

// Counts the query graph itself (vertex covers = independent sets).
inline BipartiteOracle bruteforce_bipartite_oracle(OracleBudget budget = {}) {
  return [budget](const GadgetQuery& q) {
    return bis_bruteforce(q.gadget_graph, budget);
  };
}

inline constexpr std::size_t kEnumerationSide = 12;

// Counts the query graph exactly: subset enumeration while the smaller side
// is tiny, vertex branching beyond it.
inline BipartiteOracle exact_bipartite_oracle() {
  return [](const GadgetQuery& q) {
    const auto sides = two_coloring(q.gadget_graph);
    if (!sides) throw std::invalid_argument("oracle query is not bipartite");
    std::size_t ones = 0;
    for (auto s : *sides) ones += s;
    const std::size_t small = std::min(ones, sides->size() - ones);
    return small <= kEnumerationSide ? bis_bruteforce(q.gadget_graph)
                                     : is_branching(q.gadget_graph);
  };
}

// Stands in for the oracle by the conditioning formula on the original graph.
inline BipartiteOracle conditioned_oracle() {
  return [](const GadgetQuery& q) {
    return conditioned_vc(q.original, q.part, q.ell);
  };
}

struct BisCountResult {
  Integer count;
  std::size_t queries = 0;
  KroneckerSolution solution;
  BlockPartition part;
  // Solver soundness diagnostics.
  bool nonnegative_integers = true;
  bool infeasible_types_zero = true;
  Rational total_mass;
};

inline constexpr std::size_t kDefaultGridBudget = std::size_t{1} << 16;

inline BisCountResult count_is(const Multigraph& g, std::size_t d,
                               const BipartiteOracle& oracle,
                               OracleTranscript* transcript = nullptr,
                               std::size_t grid_budget = kDefaultGridBudget) {
  if (!g.is_simple()) throw std::invalid_argument("count_is expects a simple graph");
  BisCountResult out;
  out.part = partition_edges(g, d);
  const std::size_t b = out.part.size();
  const VandermondeFactor factor = build_vandermonde(d);
  const std::size_t side = factor.size();
  std::size_t grid = 1;
  for (std::size_t i = 0; i < b; ++i) {
    if (grid > grid_budget / side)
      throw BudgetError("query grid ((d+1)^3)^b exceeds budget of " +
                        std::to_string(grid_budget));
    grid *= side;
  }

  KroneckerSystem sys{factor, b, {}};
  GridIndex ell(b, 1);
  for (std::size_t flat = 0; flat < grid; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = b; i-- > 0;) {
      ell[i] = static_cast<std::uint32_t>(rem % side + 1);
      rem /= side;
    }
    const Multigraph query = substitute_gadget(g, out.part, ell);
    Integer n_l = oracle(GadgetQuery{g, out.part, ell, query});
    if (transcript)
      transcript->add({"grid point " + std::to_string(flat), to_text(query),
                       {{"ell", ell}, {"d", d}}, to_string(n_l), to_string(n_l)});
    sys.rhs.emplace(ell, std::move(n_l));
    ++out.queries;
  }

  out.solution = kronecker_solve(sys);

  // Residual: multiplying back by A^{(x)b} must reproduce every N_l.
  std::vector<Rational> back = apply_modewise(factor.matrix(), b, out.solution.values);
  for (const auto& [l, value] : sys.rhs)
    if (back[grid_offset(l, side)] != value)
      throw std::logic_error("Kronecker solve residual is nonzero");

  Rational vc(0);
  out.total_mass = 0;
  for (std::size_t flat = 0; flat < out.solution.values.size(); ++flat) {
    const Rational& x = out.solution.values[flat];
    out.total_mass += x;
    if (!is_integer(x) || x < 0) out.nonnegative_integers = false;
    const TypeMatrix t = type_at(out.solution, flat);
    bool feasible = true;
    for (std::size_t i = 0; i < b; ++i)
      feasible = feasible && t.rows[i][0] + t.rows[i][1] + t.rows[i][2] ==
                                 out.part.blocks[i].size();
    if (!feasible && x != 0) out.infeasible_types_zero = false;
    if (t.first_column_zero()) vc += x;
  }
  if (!is_integer(vc)) throw std::logic_error("vertex-cover mass is not an integer");
  out.count = vc.get_num();
  return out;
}

}  // namespace countred
