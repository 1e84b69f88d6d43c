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

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "countred/bis_reduction.hpp"
#include "countred/csp.hpp"
#include "countred/forest.hpp"
#include "countred/graph.hpp"
#include "countred/oracles.hpp"
#include "countred/pm_reduction.hpp"
#include "countred/verify.hpp"

namespace {

using namespace countred;

enum Exit { kOk = 0, kUsage = 1, kVerification = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Multigraph load_graph(const std::string& arg) {
  if (auto g = named_graph(arg)) return *g;
  try {
    return parse_graph(read_file(arg));
  } catch (const ParseError& e) {
    throw UsageError(arg + ": " + e.what());
  }
}

class Timer {
 public:
  long long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Key/value lines in a fixed order.
class Report {
 public:
  Report& add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
    return *this;
  }

  void print(std::ostream& out) const {
    for (const auto& [k, v] : lines_) out << k << ": " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

void write_transcript(const OracleTranscript& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write transcript '" + path + "'");
  t.write_jsonl(out);
}

// The brute-force side of a verdict; empty when over budget.
template <typename F>
std::optional<Integer> within_budget(F&& f) {
  try {
    return f();
  } catch (const BudgetError&) {
    return std::nullopt;
  }
}

int verdict(Report& r, const Integer& answer, const std::optional<Integer>& check) {
  r.add("answer", to_string(answer));
  if (!check) {
    r.add("bruteforce", "skipped (over budget)");
    r.add("verdict", "UNCHECKED");
    return kOk;
  }
  r.add("bruteforce", to_string(*check));
  r.add("verdict", answer == *check ? "AGREE" : "DISAGREE");
  return answer == *check ? kOk : kVerification;
}

struct Options {
  std::string graph;
  std::size_t C = 2;
  std::string x = "2";
  std::size_t d = 1;
  std::string oracle = "brute";
  std::string transcript;
  std::string input;
  std::string suite;
  std::uint64_t seed = 1;
  std::uint32_t k = 3;
  std::string ell;
  bool single = false;
};

int cmd_reduce_pm(const Options& o) {
  Timer timer;
  const Multigraph g = load_graph(o.graph);
  PmReductionParams params;
  params.C = o.C;
  params.x = parse_rational(o.x);
  OracleTranscript transcript;
  const auto res = count_pm(g, params, sp_forest_oracle(params.t()),
                            o.transcript.empty() ? nullptr : &transcript);
  Report r;
  r.add("command", "reduce pm")
      .add("graph", o.graph)
      .add("params", "C=" + std::to_string(o.C) + " x=" + to_string(params.x) +
                         " k=" + std::to_string(params.k));
  if (res.odd_warning) r.add("warning", "odd number of vertices, no perfect matching");
  const int code = verdict(r, res.count, within_budget([&] { return pm_bruteforce(g); }));
  r.add("queries", std::to_string(res.queries));
  if (!o.transcript.empty()) {
    write_transcript(transcript, o.transcript);
    r.add("transcript", o.transcript);
  }
  r.add("wall_ms", std::to_string(timer.millis()));
  r.print(std::cout);
  return code;
}

int cmd_reduce_bis(const Options& o) {
  Timer timer;
  const Multigraph g = load_graph(o.graph);
  BipartiteOracle oracle;
  if (o.oracle == "brute")
    oracle = exact_bipartite_oracle();
  else if (o.oracle == "conditioned")
    oracle = conditioned_oracle();
  else
    throw UsageError("unknown oracle '" + o.oracle + "' (brute or conditioned)");
  OracleTranscript transcript;
  const auto res = count_is(g, o.d, oracle, o.transcript.empty() ? nullptr : &transcript);
  Report r;
  r.add("command", "reduce bis")
      .add("graph", o.graph)
      .add("params", "d=" + std::to_string(o.d) + " oracle=" + o.oracle);
  const int code = verdict(r, res.count, within_budget([&] { return is_bruteforce(g); }));
  r.add("queries", std::to_string(res.queries))
      .add("solver", std::string(res.nonnegative_integers ? "nonnegative integers" : "NOT integral") +
                         ", " + (res.infeasible_types_zero ? "infeasible types zero" : "INFEASIBLE MASS") +
                         ", total " + to_string(res.total_mass));
  if (!o.transcript.empty()) {
    write_transcript(transcript, o.transcript);
    r.add("transcript", o.transcript);
  }
  r.add("wall_ms", std::to_string(timer.millis()));
  r.print(std::cout);
  return code;
}

CspInstance load_csp(const std::string& path) {
  try {
    return csp_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_csp_classify(const Options& o) {
  const CspInstance inst = load_csp(o.input);
  const auto c = classify(inst.relations);
  Report r;
  r.add("command", "csp classify").add("input", o.input);
  if (c.all_affine) {
    r.add("class", "AllAffine");
  } else {
    r.add("class", "ContainsNonAffine")
        .add("witness", "relation " + std::to_string(*c.witness) + " " +
                            inst.relations[*c.witness].to_string())
        .add("size_constant", std::to_string(c.size_constant) +
                                  " (arity of the largest non-affine relation, a proxy)");
  }
  r.print(std::cout);
  return kOk;
}

int cmd_csp_count(const Options& o) {
  Timer timer;
  const CspInstance inst = load_csp(o.input);
  Report r;
  r.add("command", "csp count").add("input", o.input);
  int code = kOk;
  if (classify(inst.relations).all_affine) {
    r.add("method", "elimination");
    code = verdict(r, count_affine(inst), within_budget([&] { return count_bruteforce(inst); }));
  } else {
    r.add("method", "enumeration");
    r.add("answer", to_string(count_bruteforce(inst)));
  }
  r.add("wall_ms", std::to_string(timer.millis()));
  r.print(std::cout);
  return code;
}

int cmd_oracle(const std::string& kind, const Options& o) {
  const Multigraph g = load_graph(o.graph);
  Integer v;
  if (kind == "pm")
    v = pm_bruteforce(g);
  else if (kind == "is")
    v = is_bruteforce(g);
  else if (kind == "vc")
    v = vc_bruteforce(g);
  else
    v = forests_bruteforce(g);
  std::cout << to_string(v) << '\n';
  return kOk;
}

// Coefficients of F(g; x) by interpolation through exact evaluations.
SparsePolynomial forest_polynomial(const Multigraph& g) {
  const std::size_t degree = g.vertex_count() - component_count(g);
  const auto nodes = integer_nodes(degree);
  std::vector<Rational> values;
  for (const auto& x : nodes) values.push_back(forest_poly_sp(g, WeightAssignment::uniform(g, x)));
  return grid_interpolate_dense({"x"}, {nodes}, std::move(values));
}

int cmd_forest_poly(const Options& o) {
  std::cout << forest_polynomial(load_graph(o.graph)).to_string() << '\n';
  return kOk;
}

int cmd_tutte(const Options& o) {
  const Rational x = parse_rational(o.x);
  std::cout << to_string(tutte_y1(load_graph(o.graph), x)) << '\n';
  return kOk;
}

std::vector<std::uint32_t> parse_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + s + "'");
    }
  }
  return out;
}

int cmd_transform(const std::string& kind, const Options& o) {
  const Multigraph g = load_graph(o.graph);
  if (kind == "apex") {
    std::cout << to_text(add_apex(g, o.single ? ApexLabels::kSingle : ApexLabels::kPerVertex).graph);
  } else if (kind == "stretch") {
    std::cout << to_text(stretch(g, o.k));
  } else {
    const BlockPartition part = partition_edges(g, o.d);
    std::vector<std::uint32_t> ell = parse_list(o.ell);
    if (ell.size() != part.size())
      throw UsageError("need " + std::to_string(part.size()) + " gadget sizes, got " +
                       std::to_string(ell.size()));
    std::cout << to_text(substitute_gadget(g, part, ell));
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = suite_names();
  else
    suites.push_back(o.suite);
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw UsageError("unknown suite '" + s + "'");
  int code = kOk;
  Timer total;
  for (const auto& s : suites) {
    Timer timer;
    const SuiteReport rep = run_suite(s, o.seed);
    std::cout << s << ": " << (rep.passed() ? "PASS" : "FAIL") << " (" << rep.checks
              << " checks, " << timer.millis() << " ms)\n";
    if (!rep.passed()) {
      std::cout << "counterexample:\n" << *rep.counterexample << '\n';
      code = kVerification;
    }
  }
  std::cout << "seed: " << o.seed << "\nwall_ms: " << total.millis() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact graph-polynomial evaluation and counting reductions"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* reduce = app.add_subcommand("reduce", "Run a reduction pipeline against its oracle");
  reduce->require_subcommand(1);
  auto* pm = reduce->add_subcommand("pm", "Perfect matchings from forest-polynomial queries");
  pm->add_option("--graph", o.graph, "Graph file or built-in name")->required();
  pm->add_option("--C", o.C, "Block size for interpolation")->check(CLI::PositiveNumber);
  pm->add_option("--x", o.x, "Oracle point x (rational, not 1)");
  pm->add_option("--transcript", o.transcript, "Write queries as JSON lines");
  pm->callback([&] { action = [&] { return cmd_reduce_pm(o); }; });
  auto* bis = reduce->add_subcommand("bis", "Independent sets from bipartite vertex-cover queries");
  bis->add_option("--graph", o.graph, "Graph file or built-in name")->required();
  bis->add_option("--d", o.d, "Edges per block")->check(CLI::PositiveNumber);
  bis->add_option("--oracle", o.oracle, "brute or conditioned");
  bis->add_option("--transcript", o.transcript, "Write queries as JSON lines");
  bis->callback([&] { action = [&] { return cmd_reduce_bis(o); }; });

  auto* csp = app.add_subcommand("csp", "Boolean constraint languages and instances");
  csp->require_subcommand(1);
  for (const char* kind : {"classify", "count"}) {
    auto* sub = csp->add_subcommand(kind, kind == std::string("classify")
                                              ? "Affine or not, with a witness"
                                              : "Count satisfying assignments");
    sub->add_option("--input", o.input, "Instance JSON")->required();
    const bool is_classify = kind == std::string("classify");
    sub->callback([&, is_classify] {
      action = [&, is_classify] { return is_classify ? cmd_csp_classify(o) : cmd_csp_count(o); };
    });
  }

  auto* oracle = app.add_subcommand("oracle", "Brute-force counters");
  oracle->require_subcommand(1);
  for (const char* kind : {"pm", "is", "vc", "forests"}) {
    auto* sub = oracle->add_subcommand(kind, std::string("Count ") + kind);
    sub->add_option("--graph", o.graph, "Graph file or built-in name")->required();
    const std::string k = kind;
    sub->callback([&, k] { action = [&, k] { return cmd_oracle(k, o); }; });
  }

  auto* fp = app.add_subcommand("forest-poly", "Forest polynomial coefficients");
  fp->add_option("graph", o.graph, "Graph file or built-in name")->required();
  fp->callback([&] { action = [&] { return cmd_forest_poly(o); }; });

  auto* tutte = app.add_subcommand("tutte", "T(G; x, 1)");
  tutte->add_option("--x", o.x, "Rational x, not 1")->required();
  tutte->add_option("graph", o.graph, "Graph file or built-in name")->required();
  tutte->callback([&] { action = [&] { return cmd_tutte(o); }; });

  auto* transform = app.add_subcommand("transform", "Print a transformed graph");
  transform->require_subcommand(1);
  auto* apex = transform->add_subcommand("apex", "Add an apex vertex");
  apex->add_option("graph", o.graph)->required();
  apex->add_flag("--single", o.single, "Label every apex edge z");
  apex->callback([&] { action = [&] { return cmd_transform("apex", o); }; });
  auto* st = transform->add_subcommand("stretch", "Replace edges by k-paths");
  st->add_option("graph", o.graph)->required();
  st->add_option("--k", o.k, "Path length")->check(CLI::PositiveNumber);
  st->callback([&] { action = [&] { return cmd_transform("stretch", o); }; });
  auto* gd = transform->add_subcommand("gadget", "Substitute H_l gadgets per block");
  gd->add_option("graph", o.graph)->required();
  gd->add_option("--d", o.d, "Edges per block")->check(CLI::PositiveNumber);
  gd->add_option("--ell", o.ell, "Comma-separated gadget sizes, one per block")->required();
  gd->callback([&] { action = [&] { return cmd_transform("gadget", o); }; });

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", o.suite, "Suite name or all")->required();
  verify->add_option("--seed", o.seed, "Seed for random families");
  verify->callback([&] { action = [&] { return cmd_verify(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kVerification;
  }
}
