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

// One PASS/FAIL line per acceptance criterion, each under its time limit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "countred/oracles.hpp"
#include "countred/verify.hpp"

#ifndef COUNTRED_CLI
#error "COUNTRED_CLI must name the command-line binary"
#endif

using namespace countred;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome from_report(const SuiteReport& r) {
  if (r.passed()) return {true, std::to_string(r.checks) + " checks"};
  return {false, "counterexample: " + *r.counterexample};
}

// Frozen values for the named pipeline graphs, checked before the suite.
Outcome frozen_then(const std::vector<std::pair<Integer, long>>& pairs, const SuiteReport& r) {
  for (const auto& [got, want] : pairs)
    if (got != want)
      return {false, "frozen value " + std::to_string(want) + " got " + to_string(got)};
  return from_report(r);
}

bool run(const std::string& id, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.ok && in_time;
  std::cout << id << ": " << (pass ? "PASS" : "FAIL") << " (" << o.detail;
  if (!in_time) std::cout << "; over the " << limit_s << " s limit";
  std::cout << ", " << static_cast<long long>(secs * 1000) << " ms)" << std::endl;
  return pass;
}

}  // namespace

int main() {
  bool all = true;
  all &= run("AC1", 30, [] { return from_report(verify_gadget(3)); });
  all &= run("AC2", 60, [] { return from_report(verify_apex(1)); });
  all &= run("AC3", 120, [] { return from_report(verify_extract()); });
  all &= run("AC4", 60, [] { return from_report(verify_stretch(6)); });
  all &= run("AC5", 120, [] { return from_report(verify_interp()); });
  all &= run("AC6", 300, [] {
    return frozen_then({{pm_bruteforce(*named_graph("c4")), 2},
                        {pm_bruteforce(*named_graph("k4")), 3},
                        {pm_bruteforce(*named_graph("p4")), 1},
                        {pm_bruteforce(*named_graph("k33")), 6}},
                       verify_pm());
  });
  all &= run("AC7", 180, [] { return from_report(verify_eq6(25)); });
  all &= run("AC8", 300, [] {
    return frozen_then({{is_bruteforce(*named_graph("k2")), 3},
                        {is_bruteforce(*named_graph("p3")), 5},
                        {is_bruteforce(*named_graph("k3")), 4},
                        {is_bruteforce(*named_graph("c4")), 7}},
                       verify_bis());
  });
  all &= run("AC9", 30, [] { return from_report(verify_kron(1)); });
  all &= run("AC10", 180, [] { return from_report(verify_csp(1)); });
  all &= run("AC11", 1200, [] {
    const std::string cmd = std::string("\"") + COUNTRED_CLI + "\" verify all > /dev/null";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return Outcome{code == 0, "verify all exit " + std::to_string(code)};
  });
  return all ? 0 : 1;
}
