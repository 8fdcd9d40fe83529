// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense linear algebra over a prime field F_p. Entries are residues in [0, p).

#include <cstdint>
#include <utility>
#include <vector>

#include "grmrepair/errors.hpp"

namespace grmrepair {

using FpVector = std::vector<std::uint32_t>;
using FpMatrix = std::vector<FpVector>;  // row-major

namespace fp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + p - b) % p; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero();
  // Fermat; p is small.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace fp

/// Reduces `a` in place to reduced row echelon form and returns the pivot columns.
inline std::vector<std::size_t> row_reduce(FpMatrix& a, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    const std::uint32_t scale = fp::inv(a[r][c], p);
    for (auto& v : a[r]) v = fp::mul(v, scale, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint32_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = fp::sub(a[i][j], fp::mul(f, a[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank_fp(FpMatrix a, std::uint32_t p) { return row_reduce(a, p).size(); }

/// Solves A x = b for square invertible A. Throws SingularMatrix carrying the rank otherwise.
inline FpVector solve_fp(const FpMatrix& a, const FpVector& b, std::uint32_t p) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error("solve_fp: dimension mismatch");
  FpMatrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error("solve_fp: matrix is not square");
    aug[i] = a[i];
    aug[i].push_back(b[i] % p);
  }
  const auto pivots = row_reduce(aug, p);
  std::size_t rank = 0;
  for (auto c : pivots)
    if (c < n) ++rank;
  if (rank < n) throw SingularMatrix(rank);
  FpVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline FpVector mat_vec(const FpMatrix& a, const FpVector& x, std::uint32_t p) {
  FpVector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] = fp::add(y[i], fp::mul(a[i][j], x[j], p), p);
  return y;
}

}  // namespace grmrepair
