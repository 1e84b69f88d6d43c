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

#include "countred/csp.hpp"
#include "countred/generators.hpp"
#include "countred/oracles.hpp"

using namespace countred;

TEST(Relation, ParsingAndPrinting) {
  const auto r = BooleanRelation::from_strings(2, {"01", "10"});
  EXPECT_EQ(r.to_string(), "{10,01}");
  EXPECT_TRUE(r.contains(BooleanRelation::parse_tuple("01", 2)));
  EXPECT_EQ(BooleanRelation::parse_tuple("10", 2), 1U);
  EXPECT_THROW(BooleanRelation::parse_tuple("1", 2), std::invalid_argument);
  EXPECT_THROW(BooleanRelation::parse_tuple("12", 2), std::invalid_argument);
  EXPECT_THROW(BooleanRelation(0), std::invalid_argument);
  EXPECT_THROW(BooleanRelation(1, {2}), std::invalid_argument);
}

TEST(Affine, Examples) {
  EXPECT_TRUE(is_affine(parity_relation(3)));
  EXPECT_TRUE(is_affine(parity_relation(3, true)));
  EXPECT_FALSE(is_affine(or_relation()));
  EXPECT_FALSE(is_affine(implication_relation()));
  EXPECT_TRUE(is_affine(BooleanRelation(2)));
  EXPECT_TRUE(is_affine(BooleanRelation::from_strings(2, {"01", "10"})));
}

TEST(Affine, EquationsReproduceRelation) {
  Rng rng(103);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t k = 1 + uniform_below(rng, 5);
    const BooleanRelation r = random_affine_relation(rng, k);
    const auto eqs = affine_equations(r);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
      bool ok = true;
      for (const auto& e : eqs) ok = ok && ((std::popcount(e.coeffs & a) & 1) == e.rhs);
      EXPECT_EQ(ok, r.contains(a)) << r.to_string();
    }
  }
  EXPECT_THROW(affine_equations(or_relation()), std::invalid_argument);
}

TEST(CountAffine, Examples) {
  const auto x_ne_y = BooleanRelation::from_strings(2, {"01", "10"});
  EXPECT_EQ(count_affine({2, {x_ne_y}, {{0, {0, 1}}}}), 2);
  const auto zero = BooleanRelation::from_strings(1, {"0"});
  const auto one = BooleanRelation::from_strings(1, {"1"});
  EXPECT_EQ(count_affine({1, {zero, one}, {{0, {0}}, {1, {0}}}}), 0);
  EXPECT_EQ(count_affine({3, {}, {}}), 8);
  EXPECT_EQ(count_affine({3, {BooleanRelation(2)}, {{0, {0, 2}}}}), 0);
  EXPECT_THROW(count_affine({2, {or_relation()}, {{0, {0, 1}}}}), std::invalid_argument);
}

TEST(CountAffine, MatchesBruteforce) {
  Rng rng(107);
  for (int rep = 0; rep < 100; ++rep) {
    const CspInstance inst = random_affine_instance(rng, 1 + uniform_below(rng, 10));
    EXPECT_EQ(count_affine(inst), count_bruteforce(inst)) << to_json(inst).dump();
  }
}

TEST(CountAffine, RepeatedVariablesInScope) {
  const auto eq = BooleanRelation::from_strings(2, {"00", "11"});
  const auto ne = BooleanRelation::from_strings(2, {"01", "10"});
  EXPECT_EQ(count_affine({2, {eq}, {{0, {1, 1}}}}), 4);
  EXPECT_EQ(count_affine({2, {ne}, {{0, {1, 1}}}}), 0);
  EXPECT_EQ(count_bruteforce({2, {ne}, {{0, {1, 1}}}}), 0);
}

TEST(Bruteforce, GraphEncodings) {
  EXPECT_EQ(count_bruteforce(pos2sat_from_graph(*named_graph("k3"))), 4);
  EXPECT_EQ(count_bruteforce(imp2sat_from_bipartite(*named_graph("k2"))), 3);
  EXPECT_THROW(count_bruteforce({25, {}, {}}), BudgetError);
}

TEST(Imp2Sat, Examples) {
  EXPECT_EQ(count_bruteforce(imp2sat_from_bipartite(*named_graph("c4"))), 7);
  EXPECT_EQ(count_bruteforce(imp2sat_from_bipartite(complete_bipartite(1, 3))), 9);
  EXPECT_THROW(imp2sat_from_bipartite(*named_graph("k3")), std::invalid_argument);
  EXPECT_THROW(imp2sat_from_bipartite(*named_graph("k2"), std::vector<std::uint8_t>{0, 0}),
               std::invalid_argument);
}

TEST(Imp2Sat, ModelsAreIndependentSets) {
  Rng rng(109);
  for (int rep = 0; rep < 30; ++rep) {
    const Multigraph g = random_bipartite(rng, 1 + uniform_below(rng, 5), 1 + uniform_below(rng, 5), 1, 2);
    EXPECT_EQ(count_bruteforce(imp2sat_from_bipartite(g)), is_bruteforce(g));
  }
}

TEST(Pos2Sat, Examples) {
  EXPECT_EQ(count_bruteforce(pos2sat_from_graph(*named_graph("k2"))), 3);
  EXPECT_EQ(count_bruteforce(pos2sat_from_graph(Multigraph(2))), 4);
  Rng rng(113);
  for (int rep = 0; rep < 30; ++rep) {
    const Multigraph g = random_graph(rng, 1 + uniform_below(rng, 8), 1, 2);
    EXPECT_EQ(count_bruteforce(pos2sat_from_graph(g)), vc_bruteforce(g));
  }
}

TEST(Classify, Examples) {
  const auto affine = classify({parity_relation(2), parity_relation(3, true)});
  EXPECT_TRUE(affine.all_affine);
  EXPECT_FALSE(affine.witness.has_value());
  const auto mixed = classify({parity_relation(2), implication_relation(), or_relation()});
  EXPECT_FALSE(mixed.all_affine);
  EXPECT_EQ(mixed.witness, 1U);
  EXPECT_EQ(mixed.size_constant, 2U);
  EXPECT_TRUE(classify({}).all_affine);
}

TEST(Json, RoundTrip) {
  Rng rng(127);
  for (int rep = 0; rep < 20; ++rep) {
    const CspInstance inst = random_affine_instance(rng, 1 + uniform_below(rng, 6));
    EXPECT_EQ(csp_from_json(to_json(inst)), inst);
  }
  const auto bare = csp_from_json(nlohmann::json::parse(
      R"({"relations":[{"arity":2,"tuples":["01","10","11"]}]})"));
  EXPECT_EQ(bare.relations.front(), or_relation());
  EXPECT_TRUE(bare.constraints.empty());
  EXPECT_THROW(csp_from_json(nlohmann::json::parse(
                   R"({"n":1,"relations":[{"arity":1,"tuples":["0"]}],"constraints":[[0,[3]]]})")),
               std::invalid_argument);
}
