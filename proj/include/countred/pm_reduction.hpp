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

// Counting perfect matchings with nothing but an oracle that evaluates the
// forest polynomial (equivalently T(G; x, 1)) of simple graphs:
//
//   g --add apex--> g' with edge labels {w, z}
//     --block interpolation--> bivariate F(g'; w, z), from queries
//        F(g'; z0 * w') with small integer w'
//     --parallel edges + k-stretch--> each query becomes one simple graph
//        evaluated at t = 1/(x-1), where z0 = g_k(t)
//   then z = -1 and the coefficient of w^{n/2} give #PM(g) up to sign.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "countred/exact.hpp"
#include "countred/forest.hpp"
#include "countred/graph.hpp"
#include "countred/polynomial.hpp"
#include "countred/transcript.hpp"

namespace countred {

struct PmReductionParams {
  std::size_t C = 2;
  std::uint32_t k = 3;
  Rational x = 2;

  Rational t() const {
    if (x == 1) throw DomainError("the oracle point x must differ from 1");
    return 1 / (x - 1);
  }

  Rational z0() const { return g_k(t(), k); }

  void validate() const {
    if (C == 0) throw std::invalid_argument("block size C must be >= 1");
    if (k == 0 || k % 2 == 0)
      throw std::invalid_argument("stretch factor k must be odd");
    if (z0() == 0) throw DomainError("z0 = g_k(t) vanishes");
  }
};

// Evaluates F(H; t) for a simple graph H at the oracle's fixed point t.
using ForestOracle = std::function<Rational(const Multigraph&)>;

// Evaluates F(h; z0 * w') for a fixed graph h and integer weights w'.
using ScaledForestOracle =
    std::function<Rational(const Multigraph&, const std::vector<std::uint32_t>&)>;

inline ForestOracle sp_forest_oracle(const Rational& t) {
  return [t](const Multigraph& h) -> Rational {
    return forest_poly_sp(h, WeightAssignment::uniform(h, t));
  };
}

inline ForestOracle bruteforce_forest_oracle(const Rational& t) {
  return [t](const Multigraph& h) -> Rational {
    return forest_value_bruteforce(h, WeightAssignment::uniform(h, t));
  };
}

// Answers F(H; 1/(x-1)) from T(H; x, 1) = (x-1)^{|V|-k(E)} F(H; 1/(x-1)).
inline ForestOracle tutte_forest_oracle(const Rational& x) {
  return [x](const Multigraph& h) -> Rational {
    const Rational tutte = tutte_y1(h, x);
    return tutte /
           pow(Rational(x - 1), h.vertex_count() - component_count(h));
  };
}

namespace detail {

inline nlohmann::json weights_json(const std::vector<std::uint32_t>& w) {
  return nlohmann::json(w);
}

}  // namespace detail

// F(h; z0 * w') through one simple-graph query: w'_e parallel copies of
// every edge (none when w'_e = 0), each stretched into a k-path, evaluated
// at t and divided by ((t+1)^k - t^k)^{sum w'}.
inline Rational simulate_oracle_via_stretch(const Multigraph& h,
                                            const std::vector<std::uint32_t>& wprime,
                                            const PmReductionParams& params,
                                            const ForestOracle& simple,
                                            OracleTranscript* transcript = nullptr,
                                            const std::string& purpose = "query") {
  if (wprime.size() != h.edge_count())
    throw std::invalid_argument("need one integer weight per edge");
  const Rational t = params.t();
  const Rational pref = stretch_prefactor(t, params.k);
  if (pref == 0) throw DomainError("stretch prefactor vanishes at t = " + to_string(t));

  Multigraph bundles(h.vertex_count());
  std::size_t copies = 0;
  for (EdgeId id = 0; id < h.edge_count(); ++id) {
    if (wprime[id] == 0) continue;
    const auto& e = h.edge(id);
    bundles.add_edge(e.u, e.v, wprime[id], e.label);
    copies += wprime[id];
  }
  const Multigraph query = stretch(bundles, params.k);
  const Rational answer = simple(query);
  const Rational derived = answer / pow(pref, copies);
  if (transcript) {
    transcript->add({purpose, to_text(query),
                     {{"x", to_string(params.x)},
                      {"t", to_string(t)},
                      {"weights", detail::weights_json(wprime)}},
                     to_string(answer), to_string(derived)});
  }
  return derived;
}

struct BlockInterpolationResult {
  SparsePolynomial poly;  // over {w, z}
  std::size_t w_classes = 0;
  std::size_t z_classes = 0;
  std::size_t queries = 0;
};

inline std::size_t expected_query_count(std::size_t C, std::size_t w_classes,
                                        std::size_t z_classes) {
  std::size_t q = 1;
  for (std::size_t i = 0; i < w_classes + z_classes; ++i) q *= C + 1;
  return q;
}

// Recovers the bivariate forest polynomial of a graph whose edges carry the
// labels w and z. Edges of each label are grouped, in input order, into
// classes of at most C that share one indeterminate; every indeterminate is
// queried at z0 * {0..C}. The interpolated Q(w') = F(g; z0 * w') is then
// projected back by sending every class variable to w/z0 (resp. z/z0).
inline BlockInterpolationResult block_interpolation(const Multigraph& gprime,
                                                    const PmReductionParams& params,
                                                    const ScaledForestOracle& oracle) {
  params.validate();
  const Rational z0 = params.z0();
  const std::size_t C = params.C;

  std::size_t w_count = 0, z_count = 0;
  for (const auto& e : gprime.edges()) {
    if (e.mult != 1)
      throw std::invalid_argument("block interpolation expects single edges");
    if (e.label == "w")
      ++w_count;
    else if (e.label == "z")
      ++z_count;
    else
      throw std::invalid_argument("block interpolation expects labels w and z, got '" +
                                  e.label + "'");
  }
  BlockInterpolationResult out;
  out.w_classes = (w_count + C - 1) / C;
  out.z_classes = (z_count + C - 1) / C;
  const std::size_t vars = out.w_classes + out.z_classes;

  // Class variables: x_1..x_p for w-edges, then y_1..y_q for z-edges.
  std::vector<std::size_t> class_of(gprime.edge_count());
  std::size_t wi = 0, zi = 0;
  for (EdgeId id = 0; id < gprime.edge_count(); ++id)
    class_of[id] = gprime.edge(id).label == "w" ? wi++ / C
                                                : out.w_classes + zi++ / C;

  std::vector<std::string> names;
  for (std::size_t i = 0; i < out.w_classes; ++i) names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < out.z_classes; ++i) names.push_back("y" + std::to_string(i + 1));

  const std::size_t total = expected_query_count(C, out.w_classes, out.z_classes);
  std::vector<Rational> values(total);
  std::vector<std::uint32_t> digits(vars, 0), wprime(gprime.edge_count(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = vars; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(rem % (C + 1));
      rem /= C + 1;
    }
    for (EdgeId id = 0; id < gprime.edge_count(); ++id) wprime[id] = digits[class_of[id]];
    values[flat] = oracle(gprime, wprime);
    ++out.queries;
  }

  SparsePolynomial scaled = grid_interpolate_dense(
      names, std::vector<std::vector<Rational>>(vars, integer_nodes(C)), std::move(values));

  std::vector<std::size_t> target(vars);
  for (std::size_t i = 0; i < vars; ++i) target[i] = i < out.w_classes ? 0 : 1;
  out.poly = scaled.project({"w", "z"}, target,
                            std::vector<Rational>(vars, Rational(1) / z0));
  return out;
}

struct PmCountResult {
  Integer count;
  bool odd_warning = false;
  std::size_t queries = 0;
  std::size_t expected_queries = 0;
  SparsePolynomial bivariate;
};

// #PM(g) using only simple-graph forest evaluations at t = 1/(x-1).
inline PmCountResult count_pm(const Multigraph& g, const PmReductionParams& params,
                              const ForestOracle& simple,
                              OracleTranscript* transcript = nullptr) {
  if (!g.is_simple()) throw std::invalid_argument("count_pm expects a simple graph");
  params.validate();
  PmCountResult out;
  const std::size_t n = g.vertex_count();
  if (n % 2 == 1) {
    out.count = 0;
    out.odd_warning = true;
    return out;
  }
  const Multigraph gprime = add_apex(g, ApexLabels::kSingle).graph;
  std::size_t query_index = 0;
  ScaledForestOracle scaled = [&](const Multigraph& h,
                                  const std::vector<std::uint32_t>& wprime) {
    return simulate_oracle_via_stretch(h, wprime, params, simple, transcript,
                                       "grid point " + std::to_string(query_index++));
  };
  auto interp = block_interpolation(gprime, params, scaled);
  out.queries = interp.queries;
  out.expected_queries = expected_query_count(params.C, interp.w_classes, interp.z_classes);
  const SparsePolynomial apex_poly = interp.poly.substitute("z", Rational(-1));
  const PmExtraction pm = pm_coefficient_extract(apex_poly, n);
  out.count = pm.count;
  out.bivariate = std::move(interp.poly);
  return out;
}

}  // namespace countred
