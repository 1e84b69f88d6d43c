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

// Multigraph carrier and the graph transformations used by both reductions.
//
// Vertices are dense indices 0..n-1. Transformations that introduce new
// vertices (apex, stretch, gadget substitution) append them after the
// original ones, so the original vertex set of the input is always a prefix
// of the output's.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "countred/exact.hpp"

namespace countred {

using Vertex = std::uint32_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t mult = 1;
  std::string label = "w";

  friend bool operator==(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::size_t n) : n_(n) {}

  EdgeId add_edge(Vertex u, Vertex v, std::uint32_t mult = 1,
                  std::string label = "w") {
    if (u >= n_ || v >= n_)
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (mult == 0) throw std::invalid_argument("edge multiplicity must be >= 1");
    edges_.push_back(Edge{u, v, mult, std::move(label)});
    return edges_.size() - 1;
  }

  Vertex add_vertex() { return static_cast<Vertex>(n_++); }

  std::size_t vertex_count() const { return n_; }
  // Number of edge records; parallel copies within a record count once.
  std::size_t edge_count() const { return edges_.size(); }
  // Number of edges counted with multiplicity.
  std::size_t total_edges() const {
    std::size_t m = 0;
    for (const auto& e : edges_) m += e.mult;
    return m;
  }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  // Every record has multiplicity 1 and no two records share an endpoint pair.
  bool is_simple() const {
    std::vector<std::pair<Vertex, Vertex>> keys;
    keys.reserve(edges_.size());
    for (const auto& e : edges_) {
      if (e.mult != 1) return false;
      keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Disjoint sets with union by size and an undo log, so enumeration can
// backtrack without copying.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  // Returns false (and records nothing) when x and y are already connected.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    history_.push_back(y);
    return true;
  }

  void undo() {
    std::size_t y = history_.back();
    history_.pop_back();
    std::size_t x = parent_[y];
    size_[x] -= size_[y];
    parent_[y] = y;
  }

  std::size_t component_count() const {
    return parent_.size() - history_.size();
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

inline std::size_t component_count(const Multigraph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges()) uf.unite(e.u, e.v);
  return uf.component_count();
}

// Side assignment (0/1) if the graph is bipartite.
inline std::optional<std::vector<std::uint8_t>> two_coloring(
    const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::uint8_t> side(n, 2);
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] != 2) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(static_cast<Vertex>(s));
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : adj[x]) {
        if (side[y] == 2) {
          side[y] = static_cast<std::uint8_t>(1 - side[x]);
          q.push(y);
        } else if (side[y] == side[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

inline bool is_bipartite(const Multigraph& g) {
  return two_coloring(g).has_value();
}

// ---------------------------------------------------------------------------
// Text format
//
//   c comment
//   p graph <n> <m>
//   e <u> <v> [mult] [label]        (m lines; mult defaults to 1, label to w)

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline Multigraph parse_graph(std::string_view text) {
  std::optional<Multigraph> g;
  std::size_t declared_m = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (g) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "graph")
        throw ParseError(line_no, "header must be 'p graph <n> <m>'");
      auto n = detail::parse_int(tok[2]);
      auto m = detail::parse_int(tok[3]);
      if (!n || !m || *n < 0 || *m < 0)
        throw ParseError(line_no, "malformed header counts");
      g.emplace(static_cast<std::size_t>(*n));
      declared_m = static_cast<std::size_t>(*m);
      continue;
    }
    if (tok[0] == "e") {
      if (!g) throw ParseError(line_no, "edge line before header");
      if (tok.size() < 3 || tok.size() > 5)
        throw ParseError(line_no, "edge line must be 'e <u> <v> [mult] [label]'");
      auto u = detail::parse_int(tok[1]);
      auto v = detail::parse_int(tok[2]);
      if (!u || !v) throw ParseError(line_no, "malformed endpoint");
      const auto n = static_cast<long long>(g->vertex_count());
      if (*u < 0 || *v < 0 || *u >= n || *v >= n)
        throw ParseError(line_no, "endpoint out of range");
      if (*u == *v) throw ParseError(line_no, "self-loop");
      long long mult = 1;
      std::string label = "w";
      std::size_t next = 3;
      if (tok.size() > next) {
        if (auto parsed = detail::parse_int(tok[next])) {
          mult = *parsed;
          ++next;
        }
      }
      if (tok.size() > next) {
        label = std::string(tok[next]);
        ++next;
      }
      if (next != tok.size()) throw ParseError(line_no, "trailing tokens");
      if (mult <= 0) throw ParseError(line_no, "non-positive multiplicity");
      g->add_edge(static_cast<Vertex>(*u), static_cast<Vertex>(*v),
                  static_cast<std::uint32_t>(mult), std::move(label));
      continue;
    }
    throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
  }
  if (!g) throw ParseError(line_no, "missing header");
  if (g->edge_count() != declared_m)
    throw ParseError(line_no, "header declares " + std::to_string(declared_m) +
                                  " edges, found " +
                                  std::to_string(g->edge_count()));
  return *g;
}

inline std::string to_text(const Multigraph& g) {
  std::ostringstream out;
  out << "p graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges())
    out << "e " << e.u << ' ' << e.v << ' ' << e.mult << ' ' << e.label
        << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Weights

// An edge weight is either an exact value or the name of an indeterminate.
using Weight = std::variant<Rational, std::string>;

// One weight per edge record of a companion graph; parallel copies within a
// record share the record's weight.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  explicit WeightAssignment(std::vector<Weight> w) : w_(std::move(w)) {}

  static WeightAssignment from_labels(const Multigraph& g) {
    std::vector<Weight> w;
    w.reserve(g.edge_count());
    for (const auto& e : g.edges()) w.emplace_back(e.label);
    return WeightAssignment(std::move(w));
  }

  static WeightAssignment uniform(const Multigraph& g, const Rational& value) {
    return WeightAssignment(std::vector<Weight>(g.edge_count(), value));
  }

  static WeightAssignment uniform_symbol(const Multigraph& g,
                                         const std::string& name) {
    return WeightAssignment(std::vector<Weight>(g.edge_count(), name));
  }

  std::size_t size() const { return w_.size(); }
  const Weight& operator[](EdgeId id) const { return w_.at(id); }
  Weight& operator[](EdgeId id) { return w_.at(id); }
  const std::vector<Weight>& entries() const { return w_; }

  bool is_numeric() const {
    return std::all_of(w_.begin(), w_.end(), [](const Weight& x) {
      return std::holds_alternative<Rational>(x);
    });
  }

  void check_covers(const Multigraph& g) const {
    if (w_.size() != g.edge_count())
      throw std::invalid_argument("weight assignment has " +
                                  std::to_string(w_.size()) +
                                  " entries for " +
                                  std::to_string(g.edge_count()) + " edges");
  }

 private:
  std::vector<Weight> w_;
};

// ---------------------------------------------------------------------------
// Transformations

enum class ApexLabels { kPerVertex, kSingle };

struct ApexGraph {
  Multigraph graph;
  WeightAssignment weights;
  Vertex apex = 0;
};

// Joins a new vertex (index n) to every original vertex. Original edges are
// labelled w; apex edges are labelled z_v, or z for every v with kSingle.
inline ApexGraph add_apex(const Multigraph& g,
                          ApexLabels labels = ApexLabels::kPerVertex) {
  if (!g.is_simple()) throw std::invalid_argument("add_apex expects a simple graph");
  ApexGraph out;
  out.graph = Multigraph(g.vertex_count());
  for (const auto& e : g.edges()) out.graph.add_edge(e.u, e.v, 1, "w");
  out.apex = out.graph.add_vertex();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::string label =
        labels == ApexLabels::kSingle ? "z" : "z_" + std::to_string(v);
    out.graph.add_edge(out.apex, v, 1, std::move(label));
  }
  out.weights = WeightAssignment::from_labels(out.graph);
  return out;
}

// Replaces every edge by a path of k edges; an edge of multiplicity mu becomes
// mu internally-disjoint paths. New vertices are appended in edge order and
// new edges inherit the replaced edge's label.
inline Multigraph stretch(const Multigraph& g, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("stretch factor must be >= 1");
  if (k == 1) return g;
  Multigraph out(g.vertex_count());
  for (const auto& e : g.edges()) {
    for (std::uint32_t copy = 0; copy < e.mult; ++copy) {
      Vertex prev = e.u;
      for (std::uint32_t step = 1; step < k; ++step) {
        Vertex inner = out.add_vertex();
        out.add_edge(prev, inner, 1, e.label);
        prev = inner;
      }
      out.add_edge(prev, e.v, 1, e.label);
    }
  }
  return out;
}

// Gives edge record id multiplicity mults[id].
inline Multigraph fatten(const Multigraph& g,
                         const std::vector<std::uint32_t>& mults) {
  if (!g.is_simple()) throw std::invalid_argument("fatten expects a simple graph");
  if (mults.size() != g.edge_count())
    throw std::invalid_argument("fatten needs one multiplicity per edge");
  Multigraph out(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (mults[id] == 0)
      throw std::invalid_argument("fatten multiplicity must be >= 1");
    const auto& e = g.edge(id);
    out.add_edge(e.u, e.v, mults[id], e.label);
  }
  return out;
}

struct BlockPartition {
  std::vector<std::vector<EdgeId>> blocks;
  std::size_t d = 1;

  std::size_t size() const { return blocks.size(); }

  // Blocks are disjoint, cover 0..m-1 and hold at most d edges each.
  bool valid_for(const Multigraph& g) const {
    std::vector<int> seen(g.edge_count(), 0);
    for (const auto& block : blocks) {
      if (block.size() > d) return false;
      for (EdgeId id : block) {
        if (id >= seen.size() || seen[id]++) return false;
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
  }
};

// Consecutive blocks of d edges in input order; the last may be smaller.
inline BlockPartition partition_edges(const Multigraph& g, std::size_t d) {
  if (d == 0) throw std::invalid_argument("block size must be >= 1");
  BlockPartition part;
  part.d = d;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (id % d == 0) part.blocks.emplace_back();
    part.blocks.back().push_back(id);
  }
  return part;
}

// Replaces each edge of block i by the gadget H_{ell[i]}: ell[i] parallel
// copies of the edge, each stretched into a path of 4 edges.
inline Multigraph substitute_gadget(const Multigraph& g,
                                    const BlockPartition& part,
                                    const std::vector<std::uint32_t>& ell) {
  if (!g.is_simple())
    throw std::invalid_argument("substitute_gadget expects a simple graph");
  if (ell.size() != part.size())
    throw std::invalid_argument("need one gadget size per block");
  if (!part.valid_for(g))
    throw std::invalid_argument("block partition does not match the graph");
  std::vector<std::uint32_t> mults(g.edge_count(), 0);
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (ell[i] == 0) throw std::invalid_argument("gadget size must be >= 1");
    for (EdgeId id : part.blocks[i]) mults[id] = ell[i];
  }
  return stretch(fatten(g, mults), 4);
}

struct CollapsedGraph {
  Multigraph graph;
  WeightAssignment weights;
};

// Merges every parallel bundle into a single edge whose weight is the sum of
// the bundle's weights (mu copies of weight z become one edge of weight mu*z).
// Output edges appear in order of first occurrence of their endpoint pair.
inline CollapsedGraph collapse_parallel(const Multigraph& g,
                                        const WeightAssignment& base) {
  base.check_covers(g);
  if (!base.is_numeric())
    throw std::invalid_argument("collapse_parallel needs numeric weights");
  std::map<std::pair<Vertex, Vertex>, std::size_t> index;
  std::vector<Rational> sums;
  CollapsedGraph out;
  out.graph = Multigraph(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
    Rational contribution = std::get<Rational>(base[id]) * e.mult;
    auto [it, inserted] = index.emplace(key, sums.size());
    if (inserted) {
      sums.push_back(contribution);
      out.graph.add_edge(e.u, e.v, 1, e.label);
    } else {
      sums[it->second] += contribution;
    }
  }
  std::vector<Weight> w(sums.begin(), sums.end());
  out.weights = WeightAssignment(std::move(w));
  return out;
}

// ---------------------------------------------------------------------------
// Named graphs

inline Multigraph complete_graph(std::size_t n) {
  Multigraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Multigraph cycle_graph(std::size_t n) {
  Multigraph g(n);
  for (Vertex u = 0; u < n; ++u) g.add_edge(u, static_cast<Vertex>((u + 1) % n));
  return g;
}

// Path on n vertices.
inline Multigraph path_graph(std::size_t n) {
  Multigraph g(n);
  for (Vertex u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

inline Multigraph complete_bipartite(std::size_t a, std::size_t b) {
  Multigraph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.add_edge(u, static_cast<Vertex>(a + v));
  return g;
}

inline Multigraph petersen_graph() {
  Multigraph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

inline std::optional<Multigraph> named_graph(std::string_view name) {
  if (name == "k2") return complete_graph(2);
  if (name == "k3") return complete_graph(3);
  if (name == "k4") return complete_graph(4);
  if (name == "c4") return cycle_graph(4);
  if (name == "p3") return path_graph(3);
  if (name == "p4") return path_graph(4);
  if (name == "k33") return complete_bipartite(3, 3);
  if (name == "petersen") return petersen_graph();
  return std::nullopt;
}

}  // namespace countred
