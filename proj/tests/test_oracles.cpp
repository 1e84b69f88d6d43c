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

#include <gtest/gtest.h>

#include "countred/forest.hpp"
#include "countred/generators.hpp"
#include "countred/oracles.hpp"
#include "reference.hpp"

using namespace countred;

namespace {

ref::EdgeList edge_list(const Multigraph& g) {
  ref::EdgeList out;
  for (const auto& e : g.edges())
    for (std::uint32_t c = 0; c < e.mult; ++c)
      out.push_back({static_cast<int>(e.u), static_cast<int>(e.v)});
  return out;
}

}  // namespace

TEST(PerfectMatchings, Examples) {
  EXPECT_EQ(pm_bruteforce(*named_graph("c4")), 2);
  EXPECT_EQ(pm_bruteforce(*named_graph("k4")), 3);
  EXPECT_EQ(pm_bruteforce(*named_graph("k3")), 0);
  EXPECT_EQ(pm_bruteforce(*named_graph("k33")), 6);
  EXPECT_EQ(pm_bruteforce(petersen_graph()), 6);
  EXPECT_EQ(pm_bruteforce(complete_graph(6)), 15);
  EXPECT_EQ(pm_bruteforce(Multigraph(0)), 1);
}

TEST(PerfectMatchings, ParallelCopiesCount) {
  Multigraph g(2);
  g.add_edge(0, 1, 3);
  EXPECT_EQ(pm_bruteforce(g), 3);
}

TEST(IndependentSets, Examples) {
  EXPECT_EQ(is_bruteforce(*named_graph("k2")), 3);
  EXPECT_EQ(vc_bruteforce(*named_graph("k2")), 3);
  EXPECT_EQ(is_bruteforce(*named_graph("c4")), 7);
  EXPECT_EQ(vc_bruteforce(*named_graph("c4")), 7);
  EXPECT_EQ(is_bruteforce(Multigraph(3)), 8);
  EXPECT_EQ(vc_bruteforce(Multigraph(3)), 8);
  EXPECT_EQ(is_bruteforce(petersen_graph()), 76);
}

TEST(Forests, Examples) {
  EXPECT_EQ(forests_bruteforce(*named_graph("k3")), 7);
  EXPECT_EQ(forests_bruteforce(*named_graph("k4")), 38);
  EXPECT_EQ(forests_bruteforce(path_graph(6)), 32);
  EXPECT_EQ(forests_bruteforce(complete_bipartite(1, 4)), 16);
}

TEST(Oracles, AgreeWithReferences) {
  Rng rng(71);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + uniform_below(rng, 9);
    const Multigraph g = random_graph(rng, n, 1 + uniform_below(rng, 3), 4);
    const auto el = edge_list(g);
    const int ni = static_cast<int>(n);
    const Integer is = ref::independent_sets(ni, el);
    EXPECT_EQ(is_bruteforce(g), is);
    EXPECT_EQ(vc_bruteforce(g), is);
    EXPECT_EQ(is_branching(g), is);
    if (el.size() <= 16) {
      EXPECT_EQ(pm_bruteforce(g), ref::perfect_matchings(ni, el));
      EXPECT_EQ(Rational(forests_bruteforce(g)), ref::forest_value(ni, el, 1));
      EXPECT_EQ(Rational(forests_bruteforce(g)),
                forest_value_bruteforce(g, WeightAssignment::uniform(g, 1)));
    }
  }
}

TEST(Bipartite, ThreeCountersAgree) {
  Rng rng(73);
  for (int rep = 0; rep < 40; ++rep) {
    const Multigraph g =
        random_bipartite(rng, 1 + uniform_below(rng, 6), 1 + uniform_below(rng, 8), 1, 2);
    const Integer is = is_bruteforce(g);
    EXPECT_EQ(bis_bruteforce(g), is);
    EXPECT_EQ(is_branching(g), is);
  }
}

TEST(Branching, CyclesAndPaths) {
  // Lucas and Fibonacci numbers.
  EXPECT_EQ(is_branching(cycle_graph(10)), 123);
  EXPECT_EQ(is_branching(path_graph(10)), 144);
  EXPECT_EQ(is_branching(complete_bipartite(3, 30)), pow2(3) + pow2(30) - 1);
}

TEST(Budgets, Throw) {
  OracleBudget tight;
  tight.max_pm_vertices = 4;
  tight.max_is_vertices = 4;
  tight.max_forest_edges = 3;
  tight.max_bis_side = 1;
  EXPECT_THROW(pm_bruteforce(complete_graph(6), tight), BudgetError);
  EXPECT_THROW(is_bruteforce(complete_graph(5), tight), BudgetError);
  EXPECT_THROW(vc_bruteforce(complete_graph(5), tight), BudgetError);
  EXPECT_THROW(forests_bruteforce(complete_graph(4), tight), BudgetError);
  EXPECT_THROW(bis_bruteforce(*named_graph("c4"), tight), BudgetError);
  EXPECT_THROW(bis_bruteforce(*named_graph("k3")), std::invalid_argument);
}
