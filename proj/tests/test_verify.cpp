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

#include "countred/verify.hpp"

using namespace countred;

namespace {

void expect_pass(const SuiteReport& r) {
  EXPECT_TRUE(r.passed()) << r.suite << ": " << r.counterexample.value_or("");
  EXPECT_GT(r.checks, 0U) << r.suite;
}

}  // namespace

TEST(Suites, Gadget) { expect_pass(verify_gadget(2)); }
TEST(Suites, Apex) { expect_pass(verify_apex(3)); }
TEST(Suites, StretchSmall) { expect_pass(verify_stretch(3)); }
TEST(Suites, Eq6Small) { expect_pass(verify_eq6(14)); }
TEST(Suites, Kron) { expect_pass(verify_kron(5)); }
TEST(Suites, Csp) { expect_pass(verify_csp(9)); }

TEST(Suites, NamesAndDispatch) {
  EXPECT_EQ(suite_names().size(), 10U);
  EXPECT_EQ(run_suite("gadget", 1).suite, "gadget");
  EXPECT_THROW(run_suite("nope", 1), std::invalid_argument);
}

TEST(Checker, KeepsFirstFailure) {
  detail::Checker c("demo");
  EXPECT_TRUE(c.expect(true, [] { return std::string("a"); }));
  EXPECT_FALSE(c.expect(false, [] { return std::string("b"); }));
  EXPECT_FALSE(c.expect(false, [] { return std::string("c"); }));
  const SuiteReport r = c.finish();
  EXPECT_EQ(r.checks, 2U);
  EXPECT_EQ(r.counterexample, "b");
}
