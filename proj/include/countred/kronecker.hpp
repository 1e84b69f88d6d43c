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

// Exact dense linear algebra plus the Kronecker-structured Vandermonde
// system behind the bipartite independent-set reduction.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "countred/exact.hpp"

namespace countred {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

inline RationalMatrix operator*(const RationalMatrix& a,
                                const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline std::vector<Rational> operator*(const RationalMatrix& a,
                                       const std::vector<Rational>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("shape mismatch");
  std::vector<Rational> out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

// Block matrix [a_ij * B].
inline RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// A^{(x)p} with A^{(x)1} = A and A^{(x)p+1} = A (x) A^{(x)p}; p = 0 gives [1].
inline RationalMatrix kron_power(const RationalMatrix& a, std::size_t p) {
  RationalMatrix out = RationalMatrix::identity(1);
  for (std::size_t i = 0; i < p; ++i) out = kron(a, out);
  return out;
}

// Exact determinant by Gaussian elimination over the rationals.
inline Rational determinant(RationalMatrix m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rational f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

// Exact inverse by Gauss-Jordan elimination; throws DomainError if singular.
inline RationalMatrix gauss_jordan_inverse(RationalMatrix m) {
  if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Rational p = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Checks det(A (x) B) = det(A)^{n_b} * det(B)^{n_a} by direct evaluation of
// both sides.
inline bool kron_det_check(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.square() || !b.square())
    throw std::invalid_argument("kron_det_check needs square matrices");
  Rational lhs = determinant(kron(a, b));
  Rational rhs = pow(determinant(a), b.rows()) * pow(determinant(b), a.rows());
  return lhs == rhs;
}

// Applies the square matrix f along each of the p tensor modes of x, where x
// has length f.cols()^p laid out with mode 0 most significant. Equivalent to
// multiplying by f^{(x)p} without materializing it.
inline std::vector<Rational> apply_modewise(const RationalMatrix& f,
                                            std::size_t modes,
                                            std::vector<Rational> x) {
  if (!f.square()) throw std::invalid_argument("mode factor must be square");
  const std::size_t s = f.rows();
  std::size_t total = 1;
  for (std::size_t i = 0; i < modes; ++i) total *= s;
  if (x.size() != total) throw std::invalid_argument("tensor size mismatch");
  std::vector<Rational> fiber(s), result(s);
  std::size_t stride = total;
  for (std::size_t mode = 0; mode < modes; ++mode) {
    stride /= s;
    for (std::size_t outer = 0; outer < total; outer += s * stride) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t j = 0; j < s; ++j) fiber[j] = x[base + j * stride];
        for (std::size_t r = 0; r < s; ++r) {
          Rational acc(0);
          for (std::size_t j = 0; j < s; ++j)
            if (fiber[j] != 0) acc += f(r, j) * fiber[j];
          result[r] = std::move(acc);
        }
        for (std::size_t r = 0; r < s; ++r) x[base + r * stride] = result[r];
      }
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Vandermonde factor

using Tau = std::array<std::uint32_t, 3>;

// The (d+1)^3 x (d+1)^3 matrix A with rows l = 1..(d+1)^3, columns
// tau in {0..d}^3 (lexicographic, tau_1 most significant) and entries
// (2^tau_1 * 3^tau_2 * 5^tau_3)^l.
class VandermondeFactor {
 public:
  explicit VandermondeFactor(std::size_t d) : d_(d) {
    if (d == 0) throw std::invalid_argument("block size d must be >= 1");
    const std::size_t s = size();
    bases_.reserve(s);
    for (std::size_t col = 0; col < s; ++col) {
      Tau t = tau(col);
      bases_.push_back(countred::pow(Integer(2), t[0]) *
                       countred::pow(Integer(3), t[1]) *
                       countred::pow(Integer(5), t[2]));
    }
  }

  std::size_t d() const { return d_; }
  std::size_t size() const { return (d_ + 1) * (d_ + 1) * (d_ + 1); }
  const std::vector<Integer>& bases() const { return bases_; }

  Tau tau(std::size_t col) const {
    const auto w = static_cast<std::uint32_t>(d_ + 1);
    const auto c = static_cast<std::uint32_t>(col);
    return {c / (w * w), (c / w) % w, c % w};
  }

  std::size_t column(const Tau& t) const {
    return (t[0] * (d_ + 1) + t[1]) * (d_ + 1) + t[2];
  }

  // Row index l is 1-based.
  Integer entry(std::size_t l, std::size_t col) const {
    if (l == 0 || l > size()) throw std::out_of_range("row index l out of range");
    return countred::pow(bases_.at(col), l);
  }

  RationalMatrix matrix() const {
    const std::size_t s = size();
    RationalMatrix a(s, s);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) a(r, c) = Rational(entry(r + 1, c));
    return a;
  }

  // Exact inverse, computed once per d. Row tau of the inverse is the
  // coefficient vector of the Lagrange basis polynomial for base c_tau,
  // shifted by one power and divided by c_tau (rows of A start at l = 1).
  const RationalMatrix& inverse() const {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const RationalMatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[d_];
    if (!slot) slot = std::make_shared<const RationalMatrix>(compute_inverse());
    return *slot;
  }

 private:
  RationalMatrix compute_inverse() const {
    const std::size_t s = size();
    RationalMatrix inv(s, s);
    for (std::size_t t = 0; t < s; ++t) {
      std::vector<Integer> poly{Integer(1)};
      Integer denom = bases_[t];
      for (std::size_t k = 0; k < s; ++k) {
        if (k == t) continue;
        std::vector<Integer> next(poly.size() + 1, Integer(0));
        for (std::size_t p = 0; p < poly.size(); ++p) {
          next[p + 1] += poly[p];
          next[p] -= poly[p] * bases_[k];
        }
        poly = std::move(next);
        denom *= bases_[t] - bases_[k];
      }
      for (std::size_t p = 0; p < s; ++p) {
        inv(t, p) = Rational(poly[p], denom);
        inv(t, p).canonicalize();
      }
    }
    return inv;
  }

  std::size_t d_;
  std::vector<Integer> bases_;
};

inline VandermondeFactor build_vandermonde(std::size_t d) {
  return VandermondeFactor(d);
}

// Row index l-vector (1-based entries, one per block).
using GridIndex = std::vector<std::uint32_t>;

struct KroneckerSystem {
  VandermondeFactor factor;
  std::size_t blocks = 0;
  std::map<GridIndex, Integer> rhs;
};

// Solution x of A^{(x)b} x = N, dense over type indices: flat index
// sum_i col_i * D^{b-1-i} with D = (d+1)^3 and block 0 most significant.
struct KroneckerSolution {
  std::size_t d = 1;
  std::size_t blocks = 0;
  std::vector<Rational> values;

  std::size_t base() const { return (d + 1) * (d + 1) * (d + 1); }

  // Per-block columns of a flat index.
  std::vector<std::size_t> columns(std::size_t flat) const {
    std::vector<std::size_t> cols(blocks);
    for (std::size_t i = blocks; i-- > 0;) {
      cols[i] = flat % base();
      flat /= base();
    }
    return cols;
  }
};

// Flat offsets of a dense grid over {1..D}^b in the same order as
// KroneckerSolution indices.
inline std::size_t grid_offset(const GridIndex& l, std::size_t side) {
  std::size_t flat = 0;
  for (auto li : l) flat = flat * side + (li - 1);
  return flat;
}

// Solves by applying the cached exact inverse of A along each block mode;
// the Kronecker power itself is never formed.
inline KroneckerSolution kronecker_solve(const KroneckerSystem& sys) {
  const std::size_t side = sys.factor.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < sys.blocks; ++i) total *= side;
  if (sys.rhs.size() != total)
    throw std::invalid_argument("right-hand side is not total over the grid");
  std::vector<Rational> n(total);
  std::vector<bool> seen(total, false);
  for (const auto& [l, value] : sys.rhs) {
    if (l.size() != sys.blocks)
      throw std::invalid_argument("grid index has wrong arity");
    for (auto li : l)
      if (li == 0 || li > side) throw std::invalid_argument("grid index out of range");
    const std::size_t flat = grid_offset(l, side);
    seen[flat] = true;
    n[flat] = Rational(value);
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("right-hand side is not total over the grid");
  KroneckerSolution sol;
  sol.d = sys.factor.d();
  sol.blocks = sys.blocks;
  sol.values = apply_modewise(sys.factor.inverse(), sys.blocks, std::move(n));
  return sol;
}

}  // namespace countred
