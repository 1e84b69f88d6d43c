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

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "countred/exact.hpp"
#include "json.hpp"

namespace countred {

using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with exact rational coefficients. Zero
// coefficients are never stored.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  explicit SparsePolynomial(std::vector<std::string> variables)
      : vars_(std::move(variables)) {}

  static SparsePolynomial constant(std::vector<std::string> variables,
                                   const Rational& c) {
    SparsePolynomial p(std::move(variables));
    p.add_term(Exponents(p.arity(), 0), c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::size_t var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
      throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size())
      throw std::invalid_argument("exponent vector arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(arity(), 0)); }

  std::uint32_t total_degree() const {
    std::uint32_t best = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto x : e) s += x;
      best = std::max(best, s);
    }
    return best;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e.at(var));
    return best;
  }

  Rational eval(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> values;
    values.reserve(vars_.size());
    for (const auto& v : vars_) {
      auto it = point.find(v);
      if (it == point.end())
        throw std::invalid_argument("no binding for variable '" + v + "'");
      values.push_back(it->second);
    }
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) term *= pow(values[i], e[i]);
      sum += term;
    }
    return sum;
  }

  // Fixes one variable to a value and drops it from the variable list.
  SparsePolynomial substitute(const std::string& name,
                              const Rational& value) const {
    const std::size_t idx = var_index(name);
    std::vector<std::string> rest = vars_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
    SparsePolynomial out(std::move(rest));
    for (const auto& [e, c] : terms_) {
      Exponents shorter = e;
      shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(idx));
      out.add_term(shorter, c * pow(value, e[idx]));
    }
    return out;
  }

  // Maps variable i to scale[i] * target_vars[target[i]] and collects terms.
  SparsePolynomial project(std::vector<std::string> target_vars,
                           const std::vector<std::size_t>& target,
                           const std::vector<Rational>& scale) const {
    if (target.size() != arity() || scale.size() != arity())
      throw std::invalid_argument("projection needs one target per variable");
    SparsePolynomial out(std::move(target_vars));
    for (const auto& [e, c] : terms_) {
      Exponents mapped(out.arity(), 0);
      Rational coeff = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        mapped.at(target[i]) += e[i];
        coeff *= pow(scale[i], e[i]);
      }
      out.add_term(mapped, coeff);
    }
    return out;
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    require_same_variables(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend SparsePolynomial operator+(SparsePolynomial a,
                                    const SparsePolynomial& b) {
    a += b;
    return a;
  }

  friend SparsePolynomial operator*(const SparsePolynomial& a,
                                    const SparsePolynomial& b) {
    a.require_same_variables(b);
    SparsePolynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  // Human-readable form, e.g. "1 + 3*x + 3*x^2", terms by total degree.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(),
                                                       terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a,
                                                      const auto& b) {
      std::uint32_t da = 0, db = 0;
      for (auto x : a.first) da += x;
      for (auto x : b.first) db += x;
      if (da != db) return da < db;
      return a.first > b.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : sorted) {
      bool unit = true;
      for (auto x : e) unit = unit && x == 0;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out << '-';
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (unit || mag != 1) {
        out << countred::to_string(mag);
        wrote = true;
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (wrote) out << '*';
        out << vars_[i];
        if (e[i] > 1) out << '^' << e[i];
        wrote = true;
      }
    }
    return out.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_)
      terms.push_back({e, c.get_num().get_str(), c.get_den().get_str()});
    return {{"variables", vars_}, {"terms", terms}};
  }

  static SparsePolynomial from_json(const nlohmann::json& j) {
    SparsePolynomial p(j.at("variables").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
      Rational c(Integer(t.at(1).get<std::string>()),
                 Integer(t.at(2).get<std::string>()));
      c.canonicalize();
      p.add_term(t.at(0).get<Exponents>(), c);
    }
    return p;
  }

 private:
  void require_same_variables(const SparsePolynomial& o) const {
    if (vars_ != o.vars_)
      throw std::invalid_argument("polynomials over different variables");
  }

  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

// Coefficients c_0..c_deg of a univariate polynomial (one variable).
inline std::vector<Rational> univariate_coefficients(const SparsePolynomial& p) {
  if (p.arity() != 1) throw std::invalid_argument("polynomial is not univariate");
  std::vector<Rational> out(p.total_degree() + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

// ---------------------------------------------------------------------------
// Grid interpolation

namespace detail {

// Row p of the result holds the monomial coefficients of the Lagrange basis
// polynomial for node j at column j: L_j(X) = sum_p basis[p][j] X^p.
inline std::vector<std::vector<Rational>> lagrange_basis(
    const std::vector<Rational>& nodes) {
  const std::size_t s = nodes.size();
  std::vector<std::vector<Rational>> basis(s, std::vector<Rational>(s));
  for (std::size_t j = 0; j < s; ++j) {
    std::vector<Rational> poly{Rational(1)};
    Rational denom(1);
    for (std::size_t k = 0; k < s; ++k) {
      if (k == j) continue;
      std::vector<Rational> next(poly.size() + 1, Rational(0));
      for (std::size_t p = 0; p < poly.size(); ++p) {
        next[p + 1] += poly[p];
        next[p] -= poly[p] * nodes[k];
      }
      poly = std::move(next);
      denom *= nodes[j] - nodes[k];
    }
    for (std::size_t p = 0; p < s; ++p) basis[p][j] = poly[p] / denom;
  }
  return basis;
}

}  // namespace detail

// Interpolates from values given densely in row-major order over the node
// grid (first variable most significant). Variable i gets nodes[i].size()-1
// as its degree bound.
inline SparsePolynomial grid_interpolate_dense(
    std::vector<std::string> variables,
    const std::vector<std::vector<Rational>>& nodes,
    std::vector<Rational> values) {
  const std::size_t arity = variables.size();
  if (nodes.size() != arity)
    throw std::invalid_argument("need one node list per variable");
  std::size_t total = 1;
  for (const auto& ns : nodes) {
    if (ns.empty()) throw std::invalid_argument("empty node list");
    for (std::size_t a = 0; a < ns.size(); ++a)
      for (std::size_t b = a + 1; b < ns.size(); ++b)
        if (ns[a] == ns[b])
          throw std::invalid_argument("duplicate interpolation node " +
                                      countred::to_string(ns[a]));
    total *= ns.size();
  }
  if (values.size() != total)
    throw std::invalid_argument("incomplete interpolation grid");

  // Apply the inverse Vandermonde of each variable along its own axis.
  std::size_t stride = total;
  std::vector<Rational> fiber;
  for (std::size_t axis = 0; axis < arity; ++axis) {
    const std::size_t s = nodes[axis].size();
    stride /= s;
    const auto basis = detail::lagrange_basis(nodes[axis]);
    fiber.assign(s, Rational(0));
    for (std::size_t outer = 0; outer < total; outer += s * stride) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t j = 0; j < s; ++j) fiber[j] = values[base + j * stride];
        for (std::size_t p = 0; p < s; ++p) {
          Rational acc(0);
          for (std::size_t j = 0; j < s; ++j)
            if (fiber[j] != 0 && basis[p][j] != 0) acc += basis[p][j] * fiber[j];
          values[base + p * stride] = std::move(acc);
        }
      }
    }
  }

  SparsePolynomial out(std::move(variables));
  Exponents e(arity, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = arity; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(rem % nodes[i].size());
      rem /= nodes[i].size();
    }
    out.add_term(e, values[flat]);
  }
  return out;
}

// Grid values keyed by per-variable node index. Every grid point must be
// present and each variable needs exactly degree_bounds[i] + 1 nodes.
inline SparsePolynomial grid_interpolate(
    std::vector<std::string> variables,
    const std::map<std::vector<std::size_t>, Rational>& values,
    const std::vector<std::size_t>& degree_bounds,
    const std::vector<std::vector<Rational>>& nodes) {
  const std::size_t arity = variables.size();
  if (degree_bounds.size() != arity || nodes.size() != arity)
    throw std::invalid_argument("need one degree bound and node list per variable");
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (nodes[i].size() != degree_bounds[i] + 1)
      throw std::invalid_argument("variable '" + variables[i] + "' needs " +
                                  std::to_string(degree_bounds[i] + 1) +
                                  " nodes");
    total *= nodes[i].size();
  }
  std::vector<Rational> dense(total);
  std::vector<std::size_t> idx(arity, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = arity; i-- > 0;) {
      idx[i] = rem % nodes[i].size();
      rem /= nodes[i].size();
    }
    auto it = values.find(idx);
    if (it == values.end())
      throw std::invalid_argument("incomplete interpolation grid");
    dense[flat] = it->second;
  }
  return grid_interpolate_dense(std::move(variables), nodes, std::move(dense));
}

// Nodes 0, 1, ..., degree.
inline std::vector<Rational> integer_nodes(std::size_t degree) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i <= degree; ++i) out.emplace_back(static_cast<long>(i));
  return out;
}

}  // namespace countred
