// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "grmrepair/field.hpp"

namespace grmrepair {

using Exponents = std::vector<std::uint32_t>;

/// Reduced m-variate polynomial over F_q: every exponent is < q, using x^q = x.
class MultiPoly {
 public:
  MultiPoly(const Field& field, std::size_t m) : field_(field), m_(m) {}

  static MultiPoly constant(const Field& field, std::size_t m, Element c) {
    MultiPoly f(field, m);
    f.add_term(Exponents(m, 0), c);
    return f;
  }
  static MultiPoly variable(const Field& field, std::size_t m, std::size_t j) {
    Exponents e(m, 0);
    e.at(j) = 1;
    MultiPoly f(field, m);
    f.add_term(e, field.one());
    return f;
  }
  static MultiPoly monomial(const Field& field, Exponents e, Element c) {
    MultiPoly f(field, e.size());
    f.add_term(std::move(e), c);
    return f;
  }

  const Field& field() const { return field_; }
  std::size_t num_vars() const { return m_; }
  const std::map<Exponents, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree of the reduced representative; -1 for the zero polynomial.
  long total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max<long>(d, std::accumulate(e.begin(), e.end(), 0L));
    return d;
  }

  /// Adds c * x^e, reducing e first.
  void add_term(Exponents e, Element c) {
    if (e.size() != m_) throw std::invalid_argument("exponent vector has wrong length");
    for (auto& x : e) x = reduce_exponent(x);
    if (c.rank == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second = field_.add(it->second, c);
    if (it->second.rank == 0) terms_.erase(it);
  }

  MultiPoly& operator+=(const MultiPoly& g) {
    for (const auto& [e, c] : g.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& g) {
    for (const auto& [e, c] : g.terms_) add_term(e, field_.neg(c));
    return *this;
  }
  friend MultiPoly operator+(MultiPoly f, const MultiPoly& g) { return f += g; }
  friend MultiPoly operator-(MultiPoly f, const MultiPoly& g) { return f -= g; }

  friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
    MultiPoly r(f.field_, f.m_);
    Exponents e(f.m_);
    for (const auto& [ef, cf] : f.terms_)
      for (const auto& [eg, cg] : g.terms_) {
        for (std::size_t i = 0; i < f.m_; ++i) e[i] = ef[i] + eg[i];
        r.add_term(e, f.field_.mul(cf, cg));
      }
    return r;
  }

  MultiPoly scaled(Element a) const {
    MultiPoly r(field_, m_);
    for (const auto& [e, c] : terms_) r.add_term(e, field_.mul(a, c));
    return r;
  }

  MultiPoly pow(std::uint64_t k) const {
    MultiPoly result = constant(field_, m_, field_.one()), base = *this;
    for (; k; k >>= 1) {
      if (k & 1) result = result * base;
      if (k > 1) base = base * base;
    }
    return result;
  }

  Element evaluate(std::span<const Element> point) const {
    if (point.size() != m_) throw std::invalid_argument("evaluation point has wrong dimension");
    Element acc = field_.zero();
    for (const auto& [e, c] : terms_) {
      Element term = c;
      for (std::size_t i = 0; i < m_; ++i) term = field_.mul(term, field_.pow(point[i], e[i]));
      acc = field_.add(acc, term);
    }
    return acc;
  }

 private:
  std::uint32_t reduce_exponent(std::uint64_t x) const {
    const std::uint64_t q = field_.q();
    if (x < q) return static_cast<std::uint32_t>(x);
    return static_cast<std::uint32_t>((x - 1) % (q - 1) + 1);
  }

  Field field_;
  std::size_t m_;
  std::map<Exponents, Element> terms_;
};

}  // namespace grmrepair
