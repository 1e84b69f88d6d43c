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

#include "countred/generators.hpp"

using namespace countred;

TEST(Enumeration, GraphsByEdgeCount) {
  const auto all = graphs_up_to_edges(6);
  std::vector<std::size_t> by_m(7, 0);
  for (const auto& g : all) {
    ++by_m[g.edge_count()];
    EXPECT_TRUE(g.is_simple());
    for (auto d : detail::degrees(g)) EXPECT_GT(d, 0U);
  }
  EXPECT_EQ(by_m, (std::vector<std::size_t>{0, 1, 2, 5, 11, 26, 68}));
  EXPECT_EQ(all.size(), 113U);
}

TEST(Enumeration, ConnectedGraphs) {
  EXPECT_EQ(connected_graphs(1).size(), 1U);
  EXPECT_EQ(connected_graphs(4).size(), 6U);
  EXPECT_EQ(connected_graphs(5).size(), 21U);
  EXPECT_EQ(connected_graphs(6).size(), 112U);
  for (const auto& g : connected_graphs(5)) EXPECT_EQ(component_count(g), 1U);
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(isomorphic(cycle_graph(5), cycle_graph(5)));
  Multigraph c5(5);
  for (Vertex v : {0U, 2U, 4U, 1U, 3U}) c5.add_edge(v, (v + 2) % 5);
  EXPECT_TRUE(isomorphic(cycle_graph(5), c5));
  EXPECT_FALSE(isomorphic(path_graph(4), complete_bipartite(1, 3)));
  // Same degree sequence, different structure.
  Multigraph two_triangles(6);
  for (Vertex b : {0U, 3U}) {
    two_triangles.add_edge(b, b + 1);
    two_triangles.add_edge(b + 1, b + 2);
    two_triangles.add_edge(b, b + 2);
  }
  EXPECT_FALSE(isomorphic(two_triangles, cycle_graph(6)));
}

TEST(Random, Shapes) {
  Rng rng(131);
  for (int rep = 0; rep < 20; ++rep) {
    const Multigraph g = random_graph_edges(rng, 6, 7);
    EXPECT_EQ(g.edge_count(), 7U);
    EXPECT_TRUE(g.is_simple());
    const Multigraph b = random_bipartite(rng, 3, 4, 1, 2);
    EXPECT_TRUE(is_bipartite(b));
    const Rational q = random_rational(rng);
    EXPECT_LE(abs(q.get_num()), 3);
    EXPECT_LE(q.get_den(), 3);
  }
  EXPECT_THROW(random_graph_edges(rng, 3, 4), std::invalid_argument);
}

TEST(Random, AffineInstancesAreAffine) {
  Rng rng(137);
  for (int rep = 0; rep < 30; ++rep) {
    const CspInstance inst = random_affine_instance(rng, 1 + uniform_below(rng, 8));
    EXPECT_NO_THROW(inst.validate());
    for (const auto& r : inst.relations) EXPECT_TRUE(is_affine(r));
  }
}

TEST(Random, Deterministic) {
  Rng a(7), b(7);
  EXPECT_EQ(random_graph(a, 8, 1, 2), random_graph(b, 8, 1, 2));
}
