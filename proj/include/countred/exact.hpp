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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace countred {

using Integer = mpz_class;
using Rational = mpq_class;

// Thrown when an input would exceed an explicit enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a value falls outside the domain of an identity (x = 1 for the
// Tutte bridge, vanishing stretch prefactors, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parses "7", "-3", "1/3", "-2/6" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational pow(const Rational& base, std::uint64_t e) {
  Rational result(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e > 0) b *= b;
  }
  return result;
}

inline Integer pow(const Integer& base, std::uint64_t e) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), e);
  return result;
}

inline Integer pow2(std::uint64_t e) { return pow(Integer(2), e); }

}  // namespace countred
