// SPDX-License-Identifier: Apache-2.0
#pragma once

// Arithmetic in F_q = F_p[x]/(f(x)), q = p^t.
//
// Elements are identified by their rank: the integer sum of coeffs[i] * p^i, where
// coeffs are the coordinates over F_p in the polynomial basis {1, xi, ..., xi^(t-1)}
// and xi is a root of the modulus f. Rank order is the canonical element order.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grmrepair/errors.hpp"
#include "grmrepair/fp_linalg.hpp"

namespace grmrepair {

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t t = 1;
  std::vector<std::uint32_t> modulus;  // t + 1 coefficients, ascending degree, monic
};

struct Element {
  std::uint32_t rank = 0;
  constexpr auto operator<=>(const Element&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p, ascending coefficients, no trailing zeros (zero polynomial is empty).
using PolyFp = std::vector<std::uint32_t>;

inline void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyFp poly_mod(PolyFp a, const PolyFp& m, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = fp::inv(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint32_t f = fp::mul(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = fp::sub(a[shift + i], fp::mul(f, m[i], p), p);
    trim(a);
  }
  return a;
}

inline PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
  return poly_mod(std::move(r), m, p);
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Irreducibility over F_p: gcd(f, x^(p^i) - x) = 1 for every i <= deg(f)/2.
inline bool is_irreducible(const PolyFp& f, std::uint32_t p) {
  PolyFp g = f;
  trim(g);
  const std::size_t t = g.size() - 1;
  if (t == 0) return false;
  if (t == 1) return true;
  PolyFp power = poly_mod({0, 1}, g, p);  // x^(p^i) mod f, starting at i = 0
  for (std::size_t i = 1; i <= t / 2; ++i) {
    PolyFp next{1};
    for (std::uint32_t k = 0; k < p; ++k) next = poly_mulmod(next, power, g, p);
    power = next;
    PolyFp diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = fp::sub(diff[1], 1, p);
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(g, diff, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Built-in modulus for (p, t); falls back to the smallest monic irreducible in rank order.
inline std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t t) {
  if (!detail::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (t == 0) throw std::invalid_argument("extension degree t must be >= 1");
  if (p == 2) {
    switch (t) {
      case 1: return {0, 1};
      case 2: return {1, 1, 1};
      case 3: return {1, 1, 0, 1};
      case 4: return {1, 0, 0, 1, 1};  // x^4 + x^3 + 1
      case 5: return {1, 0, 1, 0, 0, 1};
      case 6: return {1, 1, 0, 0, 0, 0, 1};
      case 7: return {1, 1, 0, 0, 0, 0, 0, 1};
      case 8: return {1, 0, 1, 1, 1, 0, 0, 0, 1};
      default: break;
    }
  }
  if (t == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < t; ++i) count *= p;
  for (std::uint64_t r = 0; r < count; ++r) {
    detail::PolyFp f(t + 1, 0);
    std::uint64_t v = r;
    for (std::uint32_t i = 0; i < t; ++i, v /= p) f[i] = static_cast<std::uint32_t>(v % p);
    f[t] = 1;
    if (detail::is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");
}

/// The finite field F_{p^t}. Cheap to copy; the arithmetic tables are shared and immutable.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  explicit Field(FieldSpec spec) : tables_(std::make_shared<const Tables>(build(std::move(spec)))) {}
  Field(std::uint32_t p, std::uint32_t t) : Field(FieldSpec{p, t, default_modulus(p, t)}) {}

  const FieldSpec& spec() const { return tables_->spec; }
  std::uint32_t p() const { return tables_->spec.p; }
  std::uint32_t t() const { return tables_->spec.t; }
  std::uint32_t q() const { return tables_->q; }

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  Element element(std::uint32_t rank) const {
    if (rank >= q()) throw std::out_of_range("element rank " + std::to_string(rank) + " out of range");
    return {rank};
  }
  /// The prime-field constant lambda (mod p).
  Element constant(std::uint32_t lambda) const { return {lambda % p()}; }
  /// A root of the modulus.
  Element generator() const { return tables_->root; }
  /// xi^i, the i-th element of the canonical polynomial basis.
  Element basis_element(std::uint32_t i) const { return {tables_->p_pow.at(i)}; }
  std::vector<Element> canonical_basis() const {
    std::vector<Element> b;
    for (std::uint32_t i = 0; i < t(); ++i) b.push_back(basis_element(i));
    return b;
  }
  /// A fixed primitive element (generator of the multiplicative group).
  Element primitive() const { return {tables_->exp[1]}; }

  FpVector coords(Element a) const {
    FpVector c(t());
    std::uint32_t r = a.rank;
    for (std::uint32_t i = 0; i < t(); ++i, r /= p()) c[i] = r % p();
    return c;
  }
  Element from_coords(std::span<const std::uint32_t> c) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = t(); i-- > 0;) r = r * p() + (i < c.size() ? c[i] % p() : 0);
    return {r};
  }

  Element add(Element a, Element b) const {
    if (p() == 2) return {a.rank ^ b.rank};
    return digitwise(a, b, [this](std::uint32_t x, std::uint32_t y) { return (x + y) % p(); });
  }
  Element sub(Element a, Element b) const {
    if (p() == 2) return {a.rank ^ b.rank};
    return digitwise(a, b, [this](std::uint32_t x, std::uint32_t y) { return (x + p() - y) % p(); });
  }
  Element neg(Element a) const { return sub(zero(), a); }

  Element mul(Element a, Element b) const {
    if (a.rank == 0 || b.rank == 0) return zero();
    return {tables_->exp[tables_->log[a.rank] + tables_->log[b.rank]]};
  }
  Element inv(Element a) const {
    if (a.rank == 0) throw DivisionByZero();
    const std::uint32_t l = tables_->log[a.rank];
    return {tables_->exp[l == 0 ? 0 : q() - 1 - l]};
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.rank == 0) return zero();
    const std::uint64_t l = (static_cast<std::uint64_t>(tables_->log[a.rank]) * (e % (q() - 1))) % (q() - 1);
    return {tables_->exp[l]};
  }
  /// lambda * a for lambda in F_p.
  Element scale(std::uint32_t lambda, Element a) const { return mul(constant(lambda), a); }

  /// Tr(a) = sum_{i<t} a^(p^i), returned as a residue in [0, p).
  std::uint32_t trace(Element a) const {
    std::uint32_t r = a.rank, acc = 0;
    for (std::uint32_t i = 0; i < t(); ++i, r /= p()) acc = fp::add(acc, fp::mul(r % p(), tables_->basis_trace[i], p()), p());
    return acc;
  }

  /// Reference multiplication by schoolbook polynomial product modulo the modulus.
  Element mul_schoolbook(Element a, Element b) const { return mul_poly(tables_->spec, a, b); }

 private:
  struct Tables {
    FieldSpec spec;
    std::uint32_t q = 0;
    Element root;
    std::vector<std::uint32_t> p_pow;        // p^i, i = 0..t
    std::vector<std::uint32_t> exp;          // exp[i] = g^i, size 2(q-1)
    std::vector<std::uint32_t> log;          // log[g^i] = i
    std::vector<std::uint32_t> basis_trace;  // Tr(xi^i)
  };

  template <class Op>
  Element digitwise(Element a, Element b, Op op) const {
    std::uint32_t x = a.rank, y = b.rank, r = 0, place = 1;
    for (std::uint32_t i = 0; i < t(); ++i, x /= p(), y /= p(), place *= p()) r += op(x % p(), y % p()) * place;
    return {r};
  }

  static Element mul_poly(const FieldSpec& s, Element a, Element b) {
    detail::PolyFp pa, pb;
    for (std::uint32_t r = a.rank, i = 0; i < s.t; ++i, r /= s.p) pa.push_back(r % s.p);
    for (std::uint32_t r = b.rank, i = 0; i < s.t; ++i, r /= s.p) pb.push_back(r % s.p);
    detail::trim(pa);
    detail::trim(pb);
    const auto prod = detail::poly_mulmod(pa, pb, s.modulus, s.p);
    std::uint32_t r = 0;
    for (std::size_t i = prod.size(); i-- > 0;) r = r * s.p + prod[i];
    return {r};
  }

  static Tables build(FieldSpec spec) {
    if (!detail::is_prime(spec.p)) throw std::invalid_argument("p = " + std::to_string(spec.p) + " is not prime");
    if (spec.t == 0) throw std::invalid_argument("extension degree t must be >= 1");
    if (spec.modulus.size() != spec.t + 1 || spec.modulus.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree t");
    for (auto c : spec.modulus)
      if (c >= spec.p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
    if (!detail::is_irreducible(spec.modulus, spec.p)) throw std::invalid_argument("modulus is reducible over F_p");

    Tables tb;
    std::uint64_t q = 1;
    tb.p_pow.push_back(1);
    for (std::uint32_t i = 0; i < spec.t; ++i) {
      q *= spec.p;
      if (q > kMaxOrder) throw std::invalid_argument("field order exceeds " + std::to_string(kMaxOrder));
      tb.p_pow.push_back(static_cast<std::uint32_t>(q));
    }
    tb.q = static_cast<std::uint32_t>(q);
    tb.root = spec.t == 1 ? Element{(spec.p - spec.modulus[0]) % spec.p} : Element{spec.p};
    tb.spec = std::move(spec);

    // Primitive element search by cycle length, using schoolbook products only.
    const std::uint32_t order = tb.q - 1;
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t g = 1; g < tb.q; ++g) {
      cycle.assign(1, 1);
      Element x{g};
      while (x.rank != 1 && cycle.size() <= order) {
        cycle.push_back(x.rank);
        x = mul_poly(tb.spec, x, Element{g});
      }
      if (cycle.size() == order) break;
    }
    tb.exp.resize(2 * static_cast<std::size_t>(order));
    tb.log.assign(tb.q, 0);
    for (std::uint32_t i = 0; i < order; ++i) {
      tb.exp[i] = tb.exp[i + order] = cycle[i];
      tb.log[cycle[i]] = i;
    }

    // Tr(xi^i) by power sums with table arithmetic.
    const auto tmul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
      return (a == 0 || b == 0) ? 0 : tb.exp[tb.log[a] + tb.log[b]];
    };
    for (std::uint32_t i = 0; i < tb.spec.t; ++i) {
      std::uint32_t x = tb.p_pow[i], acc = 0;
      for (std::uint32_t k = 0; k < tb.spec.t; ++k) {
        // acc += x (digitwise), x = x^p
        std::uint32_t a = acc, b = x, r = 0, place = 1;
        for (std::uint32_t d = 0; d < tb.spec.t; ++d, a /= tb.spec.p, b /= tb.spec.p, place *= tb.spec.p)
          r += ((a % tb.spec.p + b % tb.spec.p) % tb.spec.p) * place;
        acc = r;
        std::uint32_t y = 1;
        for (std::uint32_t e = 0; e < tb.spec.p; ++e) y = tmul(y, x);
        x = y;
      }
      if (acc >= tb.spec.p) throw Error("internal: trace left the prime field");
      tb.basis_trace.push_back(acc);
    }
    return tb;
  }

  std::shared_ptr<const Tables> tables_;
};

/// Result of reducing a list of field elements to an F_p-basis of their span.
struct SpanResult {
  std::size_t dim = 0;
  std::vector<Element> basis;               // a subset of the inputs, first-come order
  std::vector<std::size_t> basis_index;     // positions of basis elements among the inputs
  std::vector<FpVector> coords;             // coords[k][j]: input k = sum_j coords[k][j] * basis[j]
};

/// Greedy Gaussian elimination in input order.
inline SpanResult span_basis(const Field& field, std::span<const Element> elems) {
  const std::uint32_t p = field.p();
  struct Row {
    FpVector vec;    // echelon vector, pivot entry 1
    std::size_t pivot;
    FpVector combo;  // vec = sum combo[j] * basis[j]
  };
  std::vector<Row> rows;
  SpanResult out;
  std::vector<FpVector> raw_coords;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    FpVector v = field.coords(elems[k]);
    FpVector acc;  // v_original = v_residual + sum acc[j] basis[j]
    for (const auto& row : rows) {
      const std::uint32_t f = v[row.pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = fp::sub(v[i], fp::mul(f, row.vec[i], p), p);
      acc.resize(std::max(acc.size(), row.combo.size()), 0);
      for (std::size_t j = 0; j < row.combo.size(); ++j) acc[j] = fp::add(acc[j], fp::mul(f, row.combo[j], p), p);
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot] == 0) ++pivot;
    if (pivot == v.size()) {
      raw_coords.push_back(std::move(acc));
      continue;
    }
    const std::size_t j = out.basis.size();
    out.basis.push_back(elems[k]);
    out.basis_index.push_back(k);
    // residual = basis_j - acc; normalize by the pivot entry.
    const std::uint32_t s = fp::inv(v[pivot], p);
    Row row{v, pivot, {}};
    for (auto& x : row.vec) x = fp::mul(x, s, p);
    row.combo.assign(j + 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) row.combo[i] = fp::mul(fp::sub(0, acc[i], p), s, p);
    row.combo[j] = s;
    rows.push_back(std::move(row));
    FpVector unit(j + 1, 0);
    unit[j] = 1;
    raw_coords.push_back(std::move(unit));
  }
  out.dim = out.basis.size();
  for (auto& c : raw_coords) c.resize(out.dim, 0);
  out.coords = std::move(raw_coords);
  return out;
}

inline std::size_t rank_over_fp(const Field& field, std::span<const Element> elems) {
  return span_basis(field, elems).dim;
}

/// The unique basis {eta_j} with Tr(basis_i * eta_j) = delta_ij.
inline std::vector<Element> dual_basis(const Field& field, std::span<const Element> basis) {
  const std::uint32_t t = field.t();
  if (basis.size() != t || rank_over_fp(field, basis) != t)
    throw RankDeficient(basis.size() == t ? rank_over_fp(field, basis) : basis.size(), t);
  // Row i of T: Tr(basis_i * xi^k). eta_j has canonical coordinates x with T x = e_j.
  FpMatrix trace_matrix(t, FpVector(t));
  for (std::uint32_t i = 0; i < t; ++i)
    for (std::uint32_t k = 0; k < t; ++k) trace_matrix[i][k] = field.trace(field.mul(basis[i], field.basis_element(k)));
  std::vector<Element> eta;
  for (std::uint32_t j = 0; j < t; ++j) {
    FpVector e(t, 0);
    e[j] = 1;
    eta.push_back(field.from_coords(solve_fp(trace_matrix, e, field.p())));
  }
  return eta;
}

}  // namespace grmrepair
