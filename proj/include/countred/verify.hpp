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

// Property suites behind `countred verify`. Every suite walks its instance
// family in order of increasing size and stops at the first violation, so
// the reported counterexample is the smallest one met.

#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "countred/bis_reduction.hpp"
#include "countred/csp.hpp"
#include "countred/exact.hpp"
#include "countred/forest.hpp"
#include "countred/generators.hpp"
#include "countred/graph.hpp"
#include "countred/kronecker.hpp"
#include "countred/oracles.hpp"
#include "countred/pm_reduction.hpp"
#include "countred/polynomial.hpp"

namespace countred {

struct SuiteReport {
  std::string suite;
  std::size_t checks = 0;
  std::optional<std::string> counterexample;

  bool passed() const { return !counterexample; }
};

namespace detail {

class Checker {
 public:
  explicit Checker(std::string suite) { report_.suite = std::move(suite); }

  bool failed() const { return report_.counterexample.has_value(); }

  // Records one comparison; keeps only the first failure.
  bool expect(bool ok, const std::function<std::string()>& dump) {
    if (failed()) return false;
    ++report_.checks;
    if (!ok) report_.counterexample = dump();
    return ok;
  }

  SuiteReport finish() { return std::move(report_); }

 private:
  SuiteReport report_;
};

inline std::string describe(const Multigraph& g) {
  std::string text = to_text(g);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

inline std::vector<Rational> coefficients_in_w(const SparsePolynomial& p) {
  if (p.arity() == 0) return {p.constant_term()};
  auto c = univariate_coefficients(p);
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

inline std::string join(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

// F(apex(g)) as a polynomial in w, apex edges fixed to zvals.
inline SparsePolynomial apex_lhs(const Multigraph& g, const std::vector<Rational>& zvals) {
  const ApexGraph a = add_apex(g);
  std::vector<Weight> w;
  for (const auto& e : a.graph.edges()) {
    if (e.label == "w")
      w.emplace_back(std::string("w"));
    else
      w.emplace_back(zvals[e.u == a.apex ? e.v : e.u]);
  }
  return forest_poly_bruteforce(a.graph, WeightAssignment(std::move(w))).poly;
}

}  // namespace detail

// H_l vertex covers bucketed by endpoints are (2^l, 3^l, 5^l).
inline SuiteReport verify_gadget(std::uint32_t max_ell = 3) {
  detail::Checker c("gadget");
  for (std::uint32_t ell = 1; ell <= max_ell; ++ell) {
    const Multigraph h = gadget_graph(ell);
    c.expect(h.vertex_count() == 2 + 3 * ell && h.total_edges() == 4 * ell &&
                 is_bipartite(h),
             [&] { return "H_" + std::to_string(ell) + " has the wrong shape"; });
    const auto brute = gadget_counts_bruteforce(ell);
    const auto closed = gadget_counts(ell);
    c.expect(brute == closed, [&] {
      return "H_" + std::to_string(ell) + ": enumeration gives (" +
             to_string(brute.neither) + ", " + to_string(brute.one) + ", " +
             to_string(brute.both) + ")";
    });
  }
  return c.finish();
}

// F(apex(g)) = sum_A w^|A| prod_T (1 + sum_{v in T} z_v), 60 random graphs
// with at most 8 edges, three apex weight settings each.
inline SuiteReport verify_apex(std::uint64_t seed = 1) {
  detail::Checker c("apex");
  Rng rng(seed);
  for (std::size_t i = 0; i < 60 && !c.failed(); ++i) {
    const std::size_t n = 2 + uniform_below(rng, 6);
    const std::size_t max_m = std::min<std::size_t>(8, n * (n - 1) / 2);
    const std::size_t m = 1 + uniform_below(rng, max_m);
    const Multigraph g = random_graph_edges(rng, n, m);
    std::vector<std::vector<Rational>> settings{
        std::vector<Rational>(n, Rational(1)), std::vector<Rational>(n, Rational(-1)), {}};
    for (std::size_t v = 0; v < n; ++v) settings[2].push_back(random_rational(rng));
    for (const auto& z : settings) {
      const auto lhs = detail::coefficients_in_w(detail::apex_lhs(g, z));
      const auto rhs = detail::coefficients_in_w(apex_rhs(g, z));
      c.expect(lhs == rhs, [&] {
        return detail::describe(g) + "\nz = " + detail::join(z) + "\nF(apex) = " +
               detail::join(lhs) + "\nrhs     = " + detail::join(rhs);
      });
    }
  }
  return c.finish();
}

// (-1)^{n/2} [w^{n/2}] F(apex(g))|_{z=-1} = #PM(g) over every connected
// graph on 2, 4 and 6 vertices. The apex polynomial is interpolated from
// exact evaluations, independently of the symbolic enumeration.
inline SuiteReport verify_extract() {
  detail::Checker c("extract");
  for (std::size_t n : {2U, 4U, 6U}) {
    for (const auto& g : connected_graphs(n)) {
      const ApexGraph a = add_apex(g);
      std::vector<Rational> values;
      const auto nodes = integer_nodes(n);
      for (const auto& x : nodes) {
        std::vector<Weight> w;
        for (const auto& e : a.graph.edges())
          w.emplace_back(e.label == "w" ? x : Rational(-1));
        values.push_back(forest_poly_sp(a.graph, WeightAssignment(std::move(w))));
      }
      const SparsePolynomial poly =
          grid_interpolate_dense({"w"}, {nodes}, std::move(values));
      const Integer got = pm_coefficient_extract(poly, n).count;
      const Integer want = pm_bruteforce(g);
      c.expect(got == want, [&] {
        return detail::describe(g) + "\nextracted " + to_string(got) + ", brute force " +
               to_string(want);
      });
    }
  }
  return c.finish();
}

// F(stretch(g, k); w) = ((w+1)^k - w^k)^m F(g; g_k(w)) for every graph with
// at most 6 edges, k in 2..5 and w in {1, 2, -2, 1/3}. The left side is
// evaluated on the stretched graph by the frontier sweep and by the
// series-parallel engine, the right side by forest enumeration on g.
inline SuiteReport verify_stretch(std::size_t max_edges = 6) {
  detail::Checker c("stretch");
  const std::vector<Rational> ws{Rational(1), Rational(2), Rational(-2), Rational(1, 3)};
  for (const auto& g : graphs_up_to_edges(max_edges)) {
    for (std::uint32_t k = 2; k <= 5; ++k)
      for (const auto& w : ws) {
        const Multigraph s = stretch(g, k);
        const Rational lhs = forest_value_frontier(s, WeightAssignment::uniform(s, w));
        const Rational lhs_sp = forest_poly_sp(s, WeightAssignment::uniform(s, w));
        const Rational rhs =
            pow(stretch_prefactor(w, k), g.total_edges()) *
            forest_value_bruteforce(g, WeightAssignment::uniform(g, g_k(w, k)));
        c.expect(lhs == rhs && lhs_sp == rhs, [&] {
          return detail::describe(g) + "\nk = " + std::to_string(k) + ", w = " +
                 to_string(w) + ": lhs " + to_string(lhs) + " (sp " + to_string(lhs_sp) +
                 "), rhs " + to_string(rhs);
        });
      }
    if (c.failed()) break;
  }
  return c.finish();
}

// Block interpolation through the stretch-simulated oracle recovers
// F(g'; w, z) of the apexed graph exactly, with (C+1)^{#classes} queries.
inline SuiteReport verify_interp() {
  detail::Checker c("interp");
  for (const char* name : {"k2", "p3", "k3"}) {
    const Multigraph g = *named_graph(name);
    const Multigraph gp = add_apex(g, ApexLabels::kSingle).graph;
    const SparsePolynomial direct =
        forest_poly_bruteforce(gp, WeightAssignment::from_labels(gp)).poly;
    for (std::size_t C : {std::size_t{2}, gp.edge_count()}) {
      PmReductionParams params;
      params.C = C;
      const ForestOracle simple = sp_forest_oracle(params.t());
      ScaledForestOracle scaled = [&](const Multigraph& h,
                                      const std::vector<std::uint32_t>& wp) {
        return simulate_oracle_via_stretch(h, wp, params, simple);
      };
      const auto res = block_interpolation(gp, params, scaled);
      const std::size_t mw = g.edge_count(), mz = g.vertex_count();
      std::size_t want_queries = 1;
      for (std::size_t i = 0; i < (mw + C - 1) / C + (mz + C - 1) / C; ++i)
        want_queries *= C + 1;
      c.expect(res.poly == direct && res.queries == want_queries, [&] {
        return std::string(name) + " C = " + std::to_string(C) + ": recovered " +
               res.poly.to_string() + " with " + std::to_string(res.queries) +
               " queries, enumeration " + direct.to_string() + ", expected " +
               std::to_string(want_queries) + " queries";
      });
    }
  }
  return c.finish();
}

// count_pm against pm_bruteforce at x in {2, 3, -1}.
inline SuiteReport verify_pm() {
  detail::Checker c("pm");
  const std::vector<std::pair<std::string, Multigraph>> family{
      {"c4", *named_graph("c4")},
      {"k4", *named_graph("k4")},
      {"p4", *named_graph("p4")},
      {"k33", complete_bipartite(3, 3)}};
  for (const auto& [name, g] : family)
    for (long x : {2L, 3L, -1L}) {
      PmReductionParams params;
      params.x = x;
      const auto res = count_pm(g, params, sp_forest_oracle(params.t()));
      const Integer want = pm_bruteforce(g);
      c.expect(res.count == want && res.queries == res.expected_queries, [&] {
        return name + " at x = " + std::to_string(x) + ": pipeline " +
               to_string(res.count) + ", brute force " + to_string(want);
      });
    }
  const auto odd = count_pm(*named_graph("k3"), PmReductionParams{},
                            sp_forest_oracle(PmReductionParams{}.t()));
  c.expect(odd.count == 0 && odd.odd_warning, [] { return std::string("k3 should give 0"); });
  return c.finish();
}

// The conditioning formula for N_l equals #VC of the gadget-substituted
// graph, for every (graph, d, l) whose substituted graph has at most
// max_vertices vertices.
inline SuiteReport verify_eq6(std::size_t max_vertices = 25) {
  detail::Checker c("eq6");
  const std::vector<std::pair<std::string, Multigraph>> family{
      {"k2", *named_graph("k2")},
      {"p3", *named_graph("p3")},
      {"k3", *named_graph("k3")},
      {"c4", *named_graph("c4")},
      {"p4", *named_graph("p4")},
      {"k13", complete_bipartite(1, 3)}};
  for (const auto& [name, g] : family)
    for (std::size_t d = 1; d <= g.edge_count(); ++d) {
      const BlockPartition part = partition_edges(g, d);
      std::vector<std::uint32_t> ell(part.size(), 1);
      // Odometer over l with the vertex bound pruning each position.
      auto size_of = [&] {
        std::size_t v = g.vertex_count();
        for (std::size_t i = 0; i < part.size(); ++i) v += 3 * ell[i] * part.blocks[i].size();
        return v;
      };
      if (size_of() > max_vertices) continue;
      while (true) {
        const Multigraph h = substitute_gadget(g, part, ell);
        const Integer lhs = conditioned_vc(g, part, ell);
        const Integer rhs = vc_bruteforce(h);
        c.expect(lhs == rhs, [&] {
          std::string l;
          for (auto x : ell) l += std::to_string(x) + " ";
          return name + " d = " + std::to_string(d) + " l = " + l + ": conditioned " +
                 to_string(lhs) + ", brute force " + to_string(rhs);
        });
        if (c.failed()) return c.finish();
        std::size_t i = 0;
        for (; i < ell.size(); ++i) {
          ++ell[i];
          if (size_of() <= max_vertices) break;
          ell[i] = 1;
        }
        if (i == ell.size()) break;
      }
    }
  return c.finish();
}

// count_is against is_bruteforce with d in {1, m}, plus solver soundness.
inline SuiteReport verify_bis() {
  detail::Checker c("bis");
  for (const char* name : {"k2", "p3", "k3", "c4"}) {
    const Multigraph g = *named_graph(name);
    for (std::size_t d : {std::size_t{1}, g.edge_count()}) {
      const auto res = count_is(g, d, exact_bipartite_oracle());
      const Integer want = is_bruteforce(g);
      c.expect(res.count == want && res.nonnegative_integers &&
                   res.infeasible_types_zero && res.total_mass == Rational(pow2(g.vertex_count())),
               [&] {
                 return std::string(name) + " d = " + std::to_string(d) + ": pipeline " +
                        to_string(res.count) + ", brute force " + to_string(want) +
                        ", mass " + to_string(res.total_mass);
               });
    }
  }
  return c.finish();
}

// det(A (x) B) = det(A)^{n_B} det(B)^{n_A} on 100 random pairs of 2x2 and
// 3x3 integer matrices; the Vandermonde factor is invertible for d = 1, 2.
inline SuiteReport verify_kron(std::uint64_t seed = 1) {
  detail::Checker c("kron");
  Rng rng(seed);
  auto random_matrix = [&](std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = static_cast<long>(uniform_below(rng, 9)) - 4;
    return m;
  };
  for (std::size_t i = 0; i < 100; ++i) {
    const RationalMatrix a = random_matrix(2 + uniform_below(rng, 2));
    const RationalMatrix b = random_matrix(2 + uniform_below(rng, 2));
    const Rational lhs = determinant(kron(a, b));
    const Rational rhs = pow(determinant(a), b.rows()) * pow(determinant(b), a.rows());
    c.expect(lhs == rhs, [&] {
      return "pair " + std::to_string(i) + ": det(A(x)B) = " + to_string(lhs) +
             ", det(A)^nB det(B)^nA = " + to_string(rhs);
    });
  }
  for (std::size_t d : {1U, 2U}) {
    const auto f = build_vandermonde(d);
    const RationalMatrix a = f.matrix();
    c.expect(determinant(a) != 0, [&] { return "singular factor for d = " + std::to_string(d); });
    c.expect(f.inverse() == gauss_jordan_inverse(a) &&
                 a * f.inverse() == RationalMatrix::identity(a.rows()),
             [&] { return "closed-form inverse disagrees for d = " + std::to_string(d); });
  }
  return c.finish();
}

namespace detail {

// Every relation of the given arity that is the solution set of some linear
// system over GF(2), as a bitmask over tuples.
inline std::vector<bool> linear_solution_sets(std::size_t arity) {
  const std::size_t tuples = std::size_t{1} << arity;
  std::vector<std::uint64_t> eq_mask;
  for (std::uint64_t coeffs = 0; coeffs < tuples; ++coeffs)
    for (int rhs = 0; rhs < 2; ++rhs) {
      std::uint64_t mask = 0;
      for (std::uint64_t t = 0; t < tuples; ++t)
        if ((std::popcount(coeffs & t) & 1) == rhs) mask |= std::uint64_t{1} << t;
      eq_mask.push_back(mask);
    }
  std::vector<bool> reachable(std::size_t{1} << tuples, false);
  const std::uint64_t all = tuples == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tuples) - 1;
  for (std::uint64_t system = 0; system < (std::uint64_t{1} << eq_mask.size()); ++system) {
    std::uint64_t sol = all;
    for (std::size_t e = 0; e < eq_mask.size(); ++e)
      if (system >> e & 1U) sol &= eq_mask[e];
    reachable[sol] = true;
  }
  return reachable;
}

}  // namespace detail

inline SuiteReport verify_csp(std::uint64_t seed = 1) {
  detail::Checker c("csp");
  Rng rng(seed);
  for (std::size_t i = 0; i < 100 && !c.failed(); ++i) {
    const CspInstance inst = random_affine_instance(rng, 1 + uniform_below(rng, 12));
    const Integer a = count_affine(inst), b = count_bruteforce(inst);
    c.expect(a == b, [&] {
      return to_json(inst).dump() + "\nelimination " + to_string(a) + ", enumeration " +
             to_string(b);
    });
  }
  for (std::size_t i = 0; i < 50 && !c.failed(); ++i) {
    const std::size_t n1 = 1 + uniform_below(rng, 6), n2 = 1 + uniform_below(rng, 6);
    const Multigraph g = random_bipartite(rng, n1, n2, 1, 2);
    const Integer models = count_bruteforce(imp2sat_from_bipartite(g));
    c.expect(models == is_bruteforce(g), [&] {
      return detail::describe(g) + "\nimplication models " + to_string(models);
    });
  }
  for (std::size_t i = 0; i < 50 && !c.failed(); ++i) {
    const Multigraph g = random_graph(rng, 1 + uniform_below(rng, 12), 1, 3);
    const Integer models = count_bruteforce(pos2sat_from_graph(g));
    c.expect(models == vc_bruteforce(g), [&] {
      return detail::describe(g) + "\nmonotone models " + to_string(models);
    });
  }
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    const auto linear = detail::linear_solution_sets(arity);
    for (std::uint64_t mask = 0; mask < linear.size(); ++mask) {
      std::set<std::uint64_t> tuples;
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << arity); ++t)
        if (mask >> t & 1U) tuples.insert(t);
      const BooleanRelation r(arity, tuples);
      c.expect(is_affine(r) == linear[mask], [&] {
        return "arity " + std::to_string(arity) + " relation " + r.to_string() +
               (linear[mask] ? " is" : " is not") + " a linear solution set";
      });
    }
  }
  return c.finish();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gadget", "apex", "extract", "stretch",
                                              "interp", "pm",   "eq6",     "bis",
                                              "kron",   "csp"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "gadget") return verify_gadget();
  if (name == "apex") return verify_apex(seed);
  if (name == "extract") return verify_extract();
  if (name == "stretch") return verify_stretch();
  if (name == "interp") return verify_interp();
  if (name == "pm") return verify_pm();
  if (name == "eq6") return verify_eq6();
  if (name == "bis") return verify_bis();
  if (name == "kron") return verify_kron(seed);
  if (name == "csp") return verify_csp(seed);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace countred
