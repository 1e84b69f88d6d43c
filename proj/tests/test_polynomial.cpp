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
#include "countred/polynomial.hpp"

using namespace countred;

namespace {

SparsePolynomial k3_forests() {
  SparsePolynomial p({"x"});
  p.add_term({0}, 1);
  p.add_term({1}, 3);
  p.add_term({2}, 3);
  return p;
}

}  // namespace

TEST(Eval, Examples) {
  EXPECT_EQ(k3_forests().eval({{"x", 1}}), 7);
  EXPECT_EQ(k3_forests().eval({{"x", 0}}), k3_forests().constant_term());
  SparsePolynomial xy({"x", "y"});
  xy.add_term({1, 1}, 1);
  EXPECT_EQ(xy.eval({{"x", 2}, {"y", 3}}), 6);
  EXPECT_THROW(xy.eval({{"x", 2}}), std::invalid_argument);
}

TEST(Terms, NoStoredZeros) {
  SparsePolynomial p({"x"});
  p.add_term({1}, 2);
  p.add_term({1}, -2);
  p.add_term({2}, 0);
  EXPECT_TRUE(p.is_zero());
  EXPECT_THROW(p.add_term({1, 1}, 1), std::invalid_argument);
}

TEST(Arithmetic, ProductAndSum) {
  SparsePolynomial one_plus_x({"x"});
  one_plus_x.add_term({0}, 1);
  one_plus_x.add_term({1}, 1);
  const SparsePolynomial sq = one_plus_x * one_plus_x;
  EXPECT_EQ(sq.to_string(), "1 + 2*x + x^2");
  EXPECT_EQ((sq + one_plus_x).to_string(), "2 + 3*x + x^2");
  EXPECT_EQ(k3_forests().to_string(), "1 + 3*x + 3*x^2");
}

TEST(Substitute, DropsVariable) {
  SparsePolynomial p({"w", "z"});
  p.add_term({1, 1}, 2);
  p.add_term({0, 2}, 1);
  const SparsePolynomial q = p.substitute("z", -1);
  EXPECT_EQ(q.variables(), std::vector<std::string>{"w"});
  EXPECT_EQ(q.coefficient({1}), -2);
  EXPECT_EQ(q.coefficient({0}), 1);
}

TEST(Json, RoundTrip) {
  SparsePolynomial p({"a", "b"});
  p.add_term({2, 0}, Rational(-7, 3));
  p.add_term({0, 5}, Rational(1, 30));
  EXPECT_EQ(SparsePolynomial::from_json(p.to_json()), p);
  const auto j = p.to_json();
  EXPECT_EQ(j.at("variables").size(), 2U);
  EXPECT_EQ(j.at("terms").at(0).at(1).get<std::string>().find('.'), std::string::npos);
}

TEST(Interpolate, QuadraticThroughThreePoints) {
  const SparsePolynomial p = grid_interpolate_dense({"x"}, {integer_nodes(2)}, {1, 2, 5});
  SparsePolynomial want({"x"});
  want.add_term({0}, 1);
  want.add_term({2}, 1);
  EXPECT_EQ(p, want);
}

TEST(Interpolate, ConstantAndBilinear) {
  const SparsePolynomial c = grid_interpolate_dense({"x"}, {integer_nodes(3)}, {4, 4, 4, 4});
  EXPECT_EQ(c.to_string(), "4");
  std::map<std::vector<std::size_t>, Rational> values;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) values[{i, j}] = Rational(static_cast<long>(i + j));
  const SparsePolynomial s =
      grid_interpolate({"x", "y"}, values, {1, 1}, {integer_nodes(1), integer_nodes(1)});
  EXPECT_EQ(s.to_string(), "x + y");
}

TEST(Interpolate, Errors) {
  EXPECT_THROW(grid_interpolate_dense({"x"}, {{Rational(0), Rational(0)}}, {1, 2}),
               std::invalid_argument);
  std::map<std::vector<std::size_t>, Rational> partial{{{0}, 1}};
  EXPECT_THROW(grid_interpolate({"x"}, partial, {1}, {integer_nodes(1)}), std::invalid_argument);
  EXPECT_THROW(grid_interpolate({"x"}, partial, {2}, {integer_nodes(1)}), std::invalid_argument);
}

TEST(Interpolate, RoundTripRandomSparse) {
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t arity = 1 + uniform_below(rng, 3);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < arity; ++i) vars.push_back("v" + std::to_string(i));
    SparsePolynomial p(vars);
    for (int t = 0; t < 6; ++t) {
      Exponents e(arity);
      for (auto& x : e) x = static_cast<std::uint32_t>(uniform_below(rng, 5));
      p.add_term(e, random_rational(rng));
    }
    // Non-integer nodes exercise general denominators.
    std::vector<std::vector<Rational>> nodes(arity);
    for (auto& row : nodes)
      for (long k = 0; k <= 4; ++k) row.push_back(Rational(2 * k - 3, 2));
    std::vector<Rational> values;
    std::size_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) total *= 5;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::map<std::string, Rational> point;
      std::size_t rem = flat;
      for (std::size_t i = arity; i-- > 0;) {
        point[vars[i]] = nodes[i][rem % 5];
        rem /= 5;
      }
      values.push_back(p.eval(point));
    }
    EXPECT_EQ(grid_interpolate_dense(vars, nodes, values), p);
  }
}

TEST(Project, ScalesByTotalDegree) {
  SparsePolynomial p({"x1", "x2", "y1"});
  p.add_term({1, 1, 0}, 1);
  p.add_term({0, 0, 2}, 3);
  const SparsePolynomial q = p.project({"w", "z"}, {0, 0, 1}, {Rational(2), Rational(2), Rational(2)});
  EXPECT_EQ(q.coefficient({2, 0}), 4);
  EXPECT_EQ(q.coefficient({0, 2}), 12);
}
