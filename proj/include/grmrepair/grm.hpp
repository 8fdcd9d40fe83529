// SPDX-License-Identifier: Apache-2.0
#pragma once

// Generalized Reed-Muller codes GRM(mu, m) over F_q: evaluations over F_q^m of
// m-variate polynomials of total degree <= mu.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grmrepair/field.hpp"
#include "grmrepair/poly.hpp"

namespace grmrepair {

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw std::overflow_error("integer overflow");
  return a * b;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r = checked_mul(r, base);
  return r;
}

/// Largest s with base^s <= x (x >= 1).
inline std::uint32_t floor_log(std::uint64_t base, std::uint64_t x) {
  std::uint32_t s = 0;
  for (std::uint64_t v = base; v <= x; v *= base) {
    ++s;
    if (v > std::numeric_limits<std::uint64_t>::max() / base) break;
  }
  return s;
}

}  // namespace detail

/// Integer parameters of GRM(mu, m) over a field of size q = p^t, used by every
/// closed-form quantity. p here is only the size of the repair subfield, so formula-level
/// callers may pass a prime power (the data path requires a prime).
struct CodeParams {
  std::uint64_t p = 2;
  std::uint64_t t = 1;
  std::uint64_t m = 1;
  std::uint64_t mu = 0;

  std::uint64_t q() const { return detail::ipow(p, t); }
  std::uint64_t n() const { return detail::ipow(q(), m); }

  void validate() const {
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (mu > m * (q() - 1)) throw std::invalid_argument("mu exceeds m(q-1)");
    (void)n();
  }

  /// mu = u(q-1) + theta with 0 <= theta < q-1.
  std::pair<std::uint64_t, std::uint64_t> split_degree() const { return {mu / (q() - 1), mu % (q() - 1)}; }

  std::int64_t mu_dual() const {
    return static_cast<std::int64_t>(m * (q() - 1)) - static_cast<std::int64_t>(mu) - 1;
  }
};

/// d = (q - theta) q^(m-u-1).
inline std::uint64_t min_distance(const CodeParams& cp) {
  const auto [u, theta] = cp.split_degree();
  if (u >= cp.m) return 1;  // mu = m(q-1): the full space
  return (cp.q() - theta) * detail::ipow(cp.q(), cp.m - u - 1);
}

/// d_dual = (theta + 2) q^u, the minimum distance of GRM(mu_dual, m).
inline std::uint64_t dual_min_distance(const CodeParams& cp) {
  if (cp.mu_dual() < 0) throw std::invalid_argument("dual code is degenerate: mu = m(q-1)");
  const auto [u, theta] = cp.split_degree();
  return (theta + 2) * detail::ipow(cp.q(), u);
}

/// Number of e in [0, q-1]^m with sum(e) <= mu, by dynamic programming over variables.
inline std::uint64_t count_monomials(const CodeParams& cp) {
  const std::uint64_t q = cp.q();
  std::vector<std::uint64_t> ways(cp.mu + 1, 0);  // ways[d]: exponent prefixes of total degree d
  ways[0] = 1;
  for (std::uint64_t v = 0; v < cp.m; ++v) {
    std::vector<std::uint64_t> prefix(cp.mu + 2, 0);
    for (std::uint64_t d = 0; d <= cp.mu; ++d) prefix[d + 1] = prefix[d] + ways[d];
    for (std::uint64_t d = 0; d <= cp.mu; ++d) ways[d] = prefix[d + 1] - prefix[d >= q - 1 ? d - (q - 1) : 0];
  }
  std::uint64_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

using Codeword = std::vector<Element>;
using CoeffMap = std::map<Exponents, Element>;

/// A GRM code bound to a concrete field. Nodes are the points of F_q^m, ranked by
/// little-endian base-q digits with coordinate 0 least significant.
class GrmCode {
 public:
  static constexpr std::uint64_t kMaxLength = 1u << 22;

  GrmCode(Field field, std::uint64_t m, std::uint64_t mu) : field_(std::move(field)), params_{field_.p(), field_.t(), m, mu} {
    params_.validate();
    if (params_.n() > kMaxLength) throw std::invalid_argument("code length exceeds simulation limit");
  }

  const Field& field() const { return field_; }
  const CodeParams& params() const { return params_; }
  std::size_t m() const { return params_.m; }
  std::uint64_t mu() const { return params_.mu; }
  std::uint32_t q() const { return field_.q(); }
  std::size_t n() const { return static_cast<std::size_t>(params_.n()); }

  GrmCode dual() const {
    if (params_.mu_dual() < 0) throw std::invalid_argument("dual code is degenerate: mu = m(q-1)");
    return GrmCode(field_, params_.m, static_cast<std::uint64_t>(params_.mu_dual()));
  }

  std::vector<Element> node_coords(std::size_t rank) const {
    std::vector<Element> x(m());
    for (std::size_t i = 0; i < m(); ++i, rank /= q()) x[i] = Element{static_cast<std::uint32_t>(rank % q())};
    return x;
  }
  std::size_t node_rank(std::span<const Element> x) const {
    if (x.size() != m()) throw std::invalid_argument("node has wrong dimension");
    std::size_t r = 0;
    for (std::size_t i = m(); i-- > 0;) r = r * q() + x[i].rank;
    return r;
  }

  /// Exponent vectors of degree <= mu, in lexicographic order.
  std::vector<Exponents> monomials() const {
    std::vector<Exponents> out;
    Exponents e(m(), 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t budget) {
      if (i == m()) {
        out.push_back(e);
        return;
      }
      for (std::uint32_t x = 0; x < q() && x <= budget; ++x) {
        e[i] = x;
        rec(i + 1, budget - x);
      }
      e[i] = 0;
    };
    rec(0, params_.mu);
    return out;
  }
  std::size_t dimension() const { return monomials().size(); }

  Codeword encode(const CoeffMap& coeffs) const {
    MultiPoly f(field_, m());
    for (const auto& [e, c] : coeffs) {
      if (e.size() != m()) throw std::invalid_argument("exponent vector has wrong length");
      std::uint64_t deg = 0;
      for (auto x : e) {
        if (x >= q()) throw DegreeViolation("exponent exceeds q-1 in a GRM coefficient");
        deg += x;
      }
      if (deg > params_.mu) throw DegreeViolation("monomial of degree " + std::to_string(deg) + " outside GRM(" + std::to_string(params_.mu) + "," + std::to_string(m()) + ")");
      f.add_term(e, c);
    }
    return evaluate_all(f);
  }

  Codeword encode(const MultiPoly& f) const {
    if (f.total_degree() > static_cast<long>(params_.mu)) throw DegreeViolation("polynomial degree exceeds mu");
    return evaluate_all(f);
  }

  /// Evaluation vector of any reduced polynomial, without a degree check.
  Codeword evaluate_all(const MultiPoly& f) const {
    Codeword cw(n(), field_.zero());
    // powers[i][x][k] = x^k for coordinate values x
    std::vector<std::vector<Element>> pw(q(), std::vector<Element>(q()));
    for (std::uint32_t x = 0; x < q(); ++x)
      for (std::uint32_t k = 0; k < q(); ++k) pw[x][k] = field_.pow(Element{x}, k);
    for (std::size_t j = 0; j < n(); ++j) {
      const auto x = node_coords(j);
      Element acc = field_.zero();
      for (const auto& [e, c] : f.terms()) {
        Element term = c;
        for (std::size_t i = 0; i < m() && term.rank; ++i) term = field_.mul(term, pw[x[i].rank][e[i]]);
        acc = field_.add(acc, term);
      }
      cw[j] = acc;
    }
    return cw;
  }

  Element inner_product(std::span<const Element> a, std::span<const Element> b) const {
    Element acc = field_.zero();
    for (std::size_t j = 0; j < a.size(); ++j) acc = field_.add(acc, field_.mul(a[j], b[j]));
    return acc;
  }

  /// Uniform random coefficients over the monomial basis; deterministic in `seed`.
  std::pair<CoeffMap, Codeword> random_codeword(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, q() - 1);
    CoeffMap coeffs;
    for (auto& e : monomials()) {
      const Element c{dist(rng)};
      if (c.rank) coeffs.emplace(std::move(e), c);
    }
    auto cw = encode(coeffs);
    return {std::move(coeffs), std::move(cw)};
  }

 private:
  Field field_;
  CodeParams params_;
};

/// True iff sum over F_q^m of f(x) g(x) vanishes.
inline bool is_dual_pair(const GrmCode& code, const MultiPoly& f, const MultiPoly& g) {
  const auto a = code.evaluate_all(f), b = code.evaluate_all(g);
  return code.inner_product(a, b).rank == 0;
}

/// Exhaustive minimum weight over all nonzero codewords.
inline std::uint64_t brute_min_distance(const GrmCode& code) {
  const auto monos = code.monomials();
  const std::size_t k = monos.size();
  const double log2_size = static_cast<double>(k) * std::log2(static_cast<double>(code.q()));
  if (k > 12 || log2_size > 24.0) throw GuardExceeded("brute-force minimum distance: instance too large");
  const Field& f = code.field();
  std::vector<Codeword> rows;
  for (const auto& e : monos) rows.push_back(code.encode(CoeffMap{{e, f.one()}}));

  // Odometer over coefficient vectors; update the codeword by the delta of each changed digit.
  std::vector<std::uint32_t> digits(k, 0);
  Codeword cw(code.n(), f.zero());
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  while (true) {
    std::size_t i = 0;
    while (i < k && digits[i] == code.q() - 1) {
      // digit wraps q-1 -> 0: subtract (q-1) * row
      for (std::size_t j = 0; j < cw.size(); ++j) cw[j] = f.sub(cw[j], f.mul(Element{code.q() - 1}, rows[i][j]));
      digits[i] = 0;
      ++i;
    }
    if (i == k) break;
    const Element old{digits[i]}, next{digits[i] + 1};
    const Element delta = f.sub(next, old);
    for (std::size_t j = 0; j < cw.size(); ++j) cw[j] = f.add(cw[j], f.mul(delta, rows[i][j]));
    digits[i] = next.rank;
    std::uint64_t w = 0;
    for (const auto& s : cw) w += s.rank != 0;
    if (w != 0) best = std::min(best, w);
  }
  return best;
}

}  // namespace grmrepair
