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

// Boolean constraint counting.

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "countred/exact.hpp"
#include "countred/graph.hpp"
#include "json.hpp"

namespace countred {

inline constexpr std::size_t kMaxRelationArity = 24;

// Tuple bit i holds position i; as a bitstring, character i is position i.
class BooleanRelation {
 public:
  BooleanRelation() = default;

  explicit BooleanRelation(std::size_t arity, std::set<std::uint64_t> tuples = {})
      : arity_(arity), tuples_(std::move(tuples)) {
    if (arity_ == 0 || arity_ > kMaxRelationArity)
      throw std::invalid_argument("relation arity must be in 1.." +
                                  std::to_string(kMaxRelationArity));
    for (auto t : tuples_)
      if (t >> arity_) throw std::invalid_argument("tuple wider than the arity");
  }

  static BooleanRelation from_strings(std::size_t arity,
                                      const std::vector<std::string>& tuples) {
    std::set<std::uint64_t> set;
    for (const auto& s : tuples) set.insert(parse_tuple(s, arity));
    return BooleanRelation(arity, std::move(set));
  }

  static std::uint64_t parse_tuple(const std::string& s, std::size_t arity) {
    if (s.size() != arity)
      throw std::invalid_argument("tuple '" + s + "' does not have length " +
                                  std::to_string(arity));
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        t |= std::uint64_t{1} << i;
      else if (s[i] != '0')
        throw std::invalid_argument("tuple '" + s + "' is not a bitstring");
    }
    return t;
  }

  std::string tuple_string(std::uint64_t t) const {
    std::string s(arity_, '0');
    for (std::size_t i = 0; i < arity_; ++i)
      if (t >> i & 1U) s[i] = '1';
    return s;
  }

  std::size_t arity() const { return arity_; }
  const std::set<std::uint64_t>& tuples() const { return tuples_; }
  bool empty() const { return tuples_.empty(); }
  bool contains(std::uint64_t t) const { return tuples_.count(t) > 0; }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto t : tuples_) {
      if (!first) s += ",";
      s += tuple_string(t);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const BooleanRelation&, const BooleanRelation&) = default;

 private:
  std::size_t arity_ = 1;
  std::set<std::uint64_t> tuples_;
};

inline BooleanRelation or_relation() { return BooleanRelation(2, {0b10, 0b01, 0b11}); }

// (a -> b) on positions (0, 1): tuples 00, 01, 11.
inline BooleanRelation implication_relation() {
  return BooleanRelation(2, {0b00, 0b10, 0b11});
}

inline BooleanRelation parity_relation(std::size_t arity, bool odd = false) {
  std::set<std::uint64_t> tuples;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << arity); ++t)
    if ((std::popcount(t) & 1) == static_cast<int>(odd)) tuples.insert(t);
  return BooleanRelation(arity, std::move(tuples));
}

struct Constraint {
  std::size_t relation = 0;
  std::vector<std::size_t> vars;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct CspInstance {
  std::size_t n = 0;
  std::vector<BooleanRelation> relations;
  std::vector<Constraint> constraints;

  void validate() const {
    for (const auto& c : constraints) {
      if (c.relation >= relations.size())
        throw std::invalid_argument("constraint names unknown relation " +
                                    std::to_string(c.relation));
      if (c.vars.size() != relations[c.relation].arity())
        throw std::invalid_argument("constraint scope does not match relation arity");
      for (auto v : c.vars)
        if (v >= n) throw std::invalid_argument("variable index out of range");
    }
  }

  friend bool operator==(const CspInstance&, const CspInstance&) = default;
};

// Closure under coordinatewise a ^ b ^ c.
inline bool is_affine(const BooleanRelation& r) {
  const std::vector<std::uint64_t> t(r.tuples().begin(), r.tuples().end());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      for (std::size_t k = j + 1; k < t.size(); ++k)
        if (!r.contains(t[i] ^ t[j] ^ t[k])) return false;
  return true;
}

// c . x = rhs over positions of a relation.
struct AffineEquation {
  std::uint64_t coeffs = 0;
  bool rhs = false;

  friend bool operator==(const AffineEquation&, const AffineEquation&) = default;
};

// A system whose solution set is r. An empty relation yields 0 = 1.
inline std::vector<AffineEquation> affine_equations(const BooleanRelation& r) {
  if (!is_affine(r)) throw std::invalid_argument("relation " + r.to_string() + " is not affine");
  if (r.empty()) return {{0, true}};
  const std::size_t k = r.arity();
  const std::uint64_t a0 = *r.tuples().begin();

  // Reduced echelon basis of the direction space {a ^ a0}.
  std::vector<std::uint64_t> basis;
  std::vector<std::size_t> pivots;
  for (auto a : r.tuples()) {
    std::uint64_t v = a ^ a0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (v >> pivots[i] & 1U) v ^= basis[i];
    if (v == 0) continue;
    const auto p = static_cast<std::size_t>(std::countr_zero(v));
    for (auto& b : basis)
      if (b >> p & 1U) b ^= v;
    basis.push_back(v);
    pivots.push_back(p);
  }
  std::uint64_t pivot_mask = 0;
  for (auto p : pivots) pivot_mask |= std::uint64_t{1} << p;

  // Orthogonal complement: one equation per free coordinate.
  std::vector<AffineEquation> eqs;
  for (std::size_t f = 0; f < k; ++f) {
    if (pivot_mask >> f & 1U) continue;
    std::uint64_t c = std::uint64_t{1} << f;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] >> f & 1U) c |= std::uint64_t{1} << pivots[i];
    eqs.push_back({c, (std::popcount(c & a0) & 1) != 0});
  }
  return eqs;
}

namespace detail {

struct Gf2Row {
  std::vector<std::uint64_t> bits;
  bool rhs = false;

  bool test(std::size_t i) const { return bits[i / 64] >> (i % 64) & 1U; }
  void flip(std::size_t i) { bits[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void add(const Gf2Row& o) {
    for (std::size_t w = 0; w < bits.size(); ++w) bits[w] ^= o.bits[w];
    rhs ^= o.rhs;
  }
  bool zero() const {
    for (auto w : bits)
      if (w) return false;
    return true;
  }
};

}  // namespace detail

inline Integer count_affine(const CspInstance& inst) {
  inst.validate();
  for (const auto& r : inst.relations)
    if (!is_affine(r))
      throw std::invalid_argument("count_affine needs affine relations; " + r.to_string() +
                                  " is not");
  const std::size_t words = (inst.n + 63) / 64;
  std::vector<std::vector<AffineEquation>> per_relation;
  for (const auto& r : inst.relations) per_relation.push_back(affine_equations(r));

  std::vector<detail::Gf2Row> rows;
  for (const auto& c : inst.constraints)
    for (const auto& eq : per_relation[c.relation]) {
      detail::Gf2Row row{std::vector<std::uint64_t>(words, 0), eq.rhs};
      for (std::size_t pos = 0; pos < c.vars.size(); ++pos)
        if (eq.coeffs >> pos & 1U) row.flip(c.vars[pos]);
      rows.push_back(std::move(row));
    }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < inst.n && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].test(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i].test(col)) rows[i].add(rows[rank]);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i)
    if (rows[i].zero() && rows[i].rhs) return Integer(0);
  return pow2(inst.n - rank);
}

inline constexpr std::size_t kCspBruteforceGuard = 24;

inline Integer count_bruteforce(const CspInstance& inst) {
  inst.validate();
  if (inst.n > kCspBruteforceGuard)
    throw BudgetError("count_bruteforce limited to " + std::to_string(kCspBruteforceGuard) +
                      " variables");
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << inst.n); ++a) {
    bool sat = true;
    for (const auto& c : inst.constraints) {
      std::uint64_t t = 0;
      for (std::size_t pos = 0; pos < c.vars.size(); ++pos)
        t |= (a >> c.vars[pos] & 1U) << pos;
      if (!inst.relations[c.relation].contains(t)) {
        sat = false;
        break;
      }
    }
    count += sat;
  }
  return Integer(static_cast<unsigned long>(count));
}

// x_v for v on side 0 means v is in the set, x_u for u on side 1 means u is
// not; every edge becomes the clause (v -> u). Models biject with independent
// sets.
inline CspInstance imp2sat_from_bipartite(const Multigraph& g,
                                          std::optional<std::vector<std::uint8_t>> sides = {}) {
  if (!sides) sides = two_coloring(g);
  if (!sides) throw std::invalid_argument("imp2sat_from_bipartite needs a bipartite graph");
  if (sides->size() != g.vertex_count())
    throw std::invalid_argument("side labelling does not cover every vertex");
  CspInstance inst{g.vertex_count(), {implication_relation()}, {}};
  for (const auto& e : g.edges()) {
    if ((*sides)[e.u] == (*sides)[e.v])
      throw std::invalid_argument("edge inside one side of the bipartition");
    const Vertex v = (*sides)[e.u] == 0 ? e.u : e.v;
    const Vertex u = v == e.u ? e.v : e.u;
    for (std::uint32_t c = 0; c < e.mult; ++c) inst.constraints.push_back({0, {v, u}});
  }
  return inst;
}

// (u or v) per edge; models are vertex covers.
inline CspInstance pos2sat_from_graph(const Multigraph& g) {
  CspInstance inst{g.vertex_count(), {or_relation()}, {}};
  for (const auto& e : g.edges())
    for (std::uint32_t c = 0; c < e.mult; ++c) inst.constraints.push_back({0, {e.u, e.v}});
  return inst;
}

struct Classification {
  bool all_affine = true;
  std::optional<std::size_t> witness;  // index into the language
  // Proxy for the size constant: arity of the largest non-affine relation.
  std::size_t size_constant = 0;
};

inline Classification classify(const std::vector<BooleanRelation>& gamma) {
  Classification out;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (is_affine(gamma[i])) continue;
    out.all_affine = false;
    if (!out.witness) out.witness = i;
    out.size_constant = std::max(out.size_constant, gamma[i].arity());
  }
  return out;
}

inline nlohmann::json to_json(const BooleanRelation& r) {
  nlohmann::json tuples = nlohmann::json::array();
  for (auto t : r.tuples()) tuples.push_back(r.tuple_string(t));
  return {{"arity", r.arity()}, {"tuples", tuples}};
}

inline BooleanRelation relation_from_json(const nlohmann::json& j) {
  return BooleanRelation::from_strings(j.at("arity").get<std::size_t>(),
                                       j.at("tuples").get<std::vector<std::string>>());
}

inline nlohmann::json to_json(const CspInstance& inst) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : inst.relations) rels.push_back(to_json(r));
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : inst.constraints) cons.push_back({c.relation, c.vars});
  return {{"n", inst.n}, {"relations", rels}, {"constraints", cons}};
}

// Missing "n" or "constraints" is allowed for a bare relation list.
inline CspInstance csp_from_json(const nlohmann::json& j) {
  CspInstance inst;
  inst.n = j.value("n", std::size_t{0});
  for (const auto& r : j.at("relations")) inst.relations.push_back(relation_from_json(r));
  if (j.contains("constraints"))
    for (const auto& c : j.at("constraints"))
      inst.constraints.push_back(
          {c.at(0).get<std::size_t>(), c.at(1).get<std::vector<std::size_t>>()});
  inst.validate();
  return inst;
}

}  // namespace countred
