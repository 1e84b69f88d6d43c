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

#include <sstream>

#include "countred/generators.hpp"
#include "countred/oracles.hpp"
#include "countred/pm_reduction.hpp"

using namespace countred;

namespace {

// F(h; z0 * w') evaluated directly on the weighted graph.
ScaledForestOracle direct_oracle(const Rational& z0) {
  return [z0](const Multigraph& h, const std::vector<std::uint32_t>& wprime) {
    std::vector<Weight> w;
    for (auto c : wprime) w.emplace_back(z0 * c);
    return forest_value_bruteforce(h, WeightAssignment(w));
  };
}

}  // namespace

TEST(Params, Defaults) {
  const PmReductionParams p;
  EXPECT_EQ(p.t(), 1);
  EXPECT_EQ(p.z0(), Rational(1, 7));
  EXPECT_NO_THROW(p.validate());
}

TEST(Params, Validation) {
  PmReductionParams p;
  p.C = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.k = 2;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.x = 1;
  EXPECT_THROW(p.validate(), DomainError);
  // t = -1/2 makes every odd stretch weight equal to t; still valid.
  p = {};
  p.x = -1;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.z0(), Rational(-1, 2));
}

TEST(Simulation, SingleEdgeDoubleWeight) {
  const PmReductionParams p;
  const Multigraph k2 = *named_graph("k2");
  const Rational z0 = p.z0();
  EXPECT_EQ(simulate_oracle_via_stretch(k2, {2}, p, sp_forest_oracle(p.t())), 1 + 2 * z0);
  EXPECT_EQ(simulate_oracle_via_stretch(k2, {0}, p, sp_forest_oracle(p.t())), 1);
  EXPECT_EQ(simulate_oracle_via_stretch(k2, {1}, p, sp_forest_oracle(p.t())), 1 + z0);
  EXPECT_THROW(simulate_oracle_via_stretch(k2, {1, 1}, p, sp_forest_oracle(p.t())),
               std::invalid_argument);
}

TEST(Simulation, MatchesDirectEvaluationOnRandomWeights) {
  Rng rng(83);
  for (const Rational& x : {Rational(2), Rational(3), Rational(-1), Rational(5, 2)}) {
    PmReductionParams p;
    p.x = x;
    for (int rep = 0; rep < 10; ++rep) {
      const Multigraph h = random_graph_edges(rng, 4 + uniform_below(rng, 2), 1 + uniform_below(rng, 4));
      std::vector<std::uint32_t> wprime;
      for (std::size_t i = 0; i < h.edge_count(); ++i)
        wprime.push_back(static_cast<std::uint32_t>(uniform_below(rng, 3)));
      EXPECT_EQ(simulate_oracle_via_stretch(h, wprime, p, sp_forest_oracle(p.t())),
                direct_oracle(p.z0())(h, wprime));
    }
  }
}

TEST(Interpolation, TriangleMatchesEnumeration) {
  Multigraph k3(3);
  k3.add_edge(0, 1, 1, "w");
  k3.add_edge(1, 2, 1, "w");
  k3.add_edge(0, 2, 1, "z");
  const PmReductionParams p;
  const auto r = block_interpolation(k3, p, direct_oracle(p.z0()));
  EXPECT_EQ(r.poly, forest_poly_bruteforce(k3, WeightAssignment::from_labels(k3)).poly);
  EXPECT_EQ(r.w_classes, 1U);
  EXPECT_EQ(r.z_classes, 1U);
  EXPECT_EQ(r.queries, 9U);
}

TEST(Interpolation, AllWGraphHasNoZTerms) {
  const Multigraph c4 = *named_graph("c4");
  const PmReductionParams p;
  const auto r = block_interpolation(c4, p, direct_oracle(p.z0()));
  EXPECT_EQ(r.z_classes, 0U);
  EXPECT_EQ(r.poly.degree_in(1), 0U);
  EXPECT_EQ(r.poly.eval({{"w", 1}, {"z", 0}}), 15);
}

TEST(Interpolation, ApexPolynomialForEveryBlockSize) {
  const Multigraph p3 = *named_graph("p3");
  const Multigraph gp = add_apex(p3, ApexLabels::kSingle).graph;
  const auto want = forest_poly_bruteforce(gp, WeightAssignment::from_labels(gp)).poly;
  for (std::size_t C = 1; C <= gp.edge_count(); ++C) {
    PmReductionParams p;
    p.C = C;
    const auto r = block_interpolation(gp, p, direct_oracle(p.z0()));
    EXPECT_EQ(r.poly, want) << "C=" << C;
    EXPECT_EQ(r.queries, expected_query_count(C, (2 + C - 1) / C, (3 + C - 1) / C));
  }
}

TEST(Interpolation, RejectsBadLabels) {
  Multigraph g(2);
  g.add_edge(0, 1, 1, "q");
  EXPECT_THROW(block_interpolation(g, {}, direct_oracle(Rational(1, 7))), std::invalid_argument);
  Multigraph h(2);
  h.add_edge(0, 1, 2, "w");
  EXPECT_THROW(block_interpolation(h, {}, direct_oracle(Rational(1, 7))), std::invalid_argument);
}

TEST(CountPm, Examples) {
  const PmReductionParams p;
  for (const char* name : {"k2", "c4", "k4", "p4"}) {
    const Multigraph g = *named_graph(name);
    const auto r = count_pm(g, p, sp_forest_oracle(p.t()));
    EXPECT_EQ(r.count, pm_bruteforce(g)) << name;
    EXPECT_EQ(r.queries, r.expected_queries);
    EXPECT_FALSE(r.odd_warning);
  }
}

TEST(CountPm, OddVertexCount) {
  const auto r = count_pm(*named_graph("k3"), {}, sp_forest_oracle(1));
  EXPECT_EQ(r.count, 0);
  EXPECT_TRUE(r.odd_warning);
  EXPECT_EQ(r.queries, 0U);
}

TEST(CountPm, RejectsMultigraph) {
  Multigraph g(2);
  g.add_edge(0, 1, 2);
  EXPECT_THROW(count_pm(g, {}, sp_forest_oracle(1)), std::invalid_argument);
}

TEST(CountPm, IndependentOfOracleRoute) {
  const Multigraph c4 = *named_graph("c4");
  for (const Rational& x : {Rational(2), Rational(3), Rational(-1)}) {
    PmReductionParams p;
    p.x = x;
    p.C = 4;
    const auto a = count_pm(c4, p, sp_forest_oracle(p.t()));
    const auto b = count_pm(c4, p, tutte_forest_oracle(x));
    EXPECT_EQ(a.count, 2);
    EXPECT_EQ(b.count, 2);
    EXPECT_EQ(a.bivariate, b.bivariate);
  }
  PmReductionParams p;
  EXPECT_EQ(count_pm(*named_graph("k2"), p, bruteforce_forest_oracle(p.t())).count, 1);
}

TEST(CountPm, RandomGraphsAgreeWithEnumeration) {
  Rng rng(89);
  PmReductionParams p;
  p.C = 6;
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 2 * (1 + uniform_below(rng, 3));
    const Multigraph g = random_graph_edges(rng, n, std::min<std::size_t>(n * (n - 1) / 2, n + 1));
    EXPECT_EQ(count_pm(g, p, sp_forest_oracle(p.t())).count, pm_bruteforce(g)) << to_text(g);
  }
}

TEST(Transcript, ReplayReproducesAnswers) {
  PmReductionParams p;
  p.C = 3;
  OracleTranscript t;
  const auto r = count_pm(*named_graph("c4"), p, sp_forest_oracle(p.t()), &t);
  ASSERT_EQ(t.size(), r.queries);
  std::stringstream buf;
  t.write_jsonl(buf);
  const OracleTranscript back = OracleTranscript::read_jsonl(buf);
  ASSERT_EQ(back.size(), t.size());
  const auto oracle = bruteforce_forest_oracle(p.t());
  for (const auto& e : back.entries()) {
    const Multigraph q = parse_graph(e.graph);
    EXPECT_TRUE(q.is_simple());
    EXPECT_EQ(to_string(forest_poly_sp(q, WeightAssignment::uniform(q, p.t()))), e.answer);
    if (q.total_edges() <= kForestEdgeGuard) {
      EXPECT_EQ(to_string(oracle(q)), e.answer);
    }
    EXPECT_EQ(e.point.at("x").get<std::string>(), "2");
  }
}
