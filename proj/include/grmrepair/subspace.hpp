// SPDX-License-Identifier: Apache-2.0
#pragma once

// F_p-subspaces of F_q and their subspace (linearized) polynomials
// L_V(x) = prod_{v in V} (x - v) = sum_{k=0}^{s} c_k x^(p^k).

#include <cstdint>
#include <span>
#include <vector>

#include "grmrepair/field.hpp"

namespace grmrepair {

class Subspace {
 public:
  /// The span of `basis`; throws RankDeficient if the basis is dependent.
  Subspace(const Field& field, std::vector<Element> basis) : basis_(std::move(basis)) {
    const auto rank = rank_over_fp(field, basis_);
    if (rank != basis_.size()) throw RankDeficient(rank, basis_.size());
  }

  /// span{1, xi, ..., xi^(s-1)}.
  static Subspace canonical(const Field& field, std::uint32_t s) {
    if (s > field.t()) throw std::invalid_argument("subspace dimension exceeds t");
    std::vector<Element> b;
    for (std::uint32_t i = 0; i < s; ++i) b.push_back(field.basis_element(i));
    return Subspace(field, std::move(b));
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Element>& basis() const { return basis_; }

  /// All p^s elements, enumerated by F_p-coordinates over the basis.
  std::vector<Element> elements(const Field& field) const {
    std::vector<Element> out{field.zero()};
    for (const auto& b : basis_) {
      std::vector<Element> next;
      next.reserve(out.size() * field.p());
      for (std::uint32_t lambda = 0; lambda < field.p(); ++lambda)
        for (const auto& v : out) next.push_back(field.add(v, field.scale(lambda, b)));
      out = std::move(next);
    }
    return out;
  }

  bool contains(const Field& field, Element y) const {
    std::vector<Element> with = basis_;
    with.push_back(y);
    return rank_over_fp(field, with) == basis_.size();
  }

 private:
  std::vector<Element> basis_;
};

/// Direct product prod_{v in V} (y - v).
inline Element subspace_poly_eval(const Field& field, const Subspace& v, Element y) {
  Element acc = field.one();
  for (const auto& x : v.elements(field)) acc = field.mul(acc, field.sub(y, x));
  return acc;
}

/// c_0 = prod_{v in V \ {0}} v; 1 for V = {0}.
inline Element subspace_c0(const Field& field, const Subspace& v) {
  Element acc = field.one();
  for (const auto& x : v.elements(field))
    if (x.rank != 0) acc = field.mul(acc, x);
  return acc;
}

/// Linearized form of L_V, built one basis vector at a time via
/// L_{V + <b>}(x) = L_V(x)^p - L_V(b)^(p-1) L_V(x).
class LinearizedPoly {
 public:
  LinearizedPoly(const Field& field, const Subspace& v) : field_(field), coeffs_{field.one()} {
    for (const auto& b : v.basis()) {
      const Element beta = field_.pow(eval(b), field_.p() - 1);
      std::vector<Element> next(coeffs_.size() + 1, field_.zero());
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        next[k + 1] = field_.add(next[k + 1], field_.pow(coeffs_[k], field_.p()));
        next[k] = field_.sub(next[k], field_.mul(beta, coeffs_[k]));
      }
      coeffs_ = std::move(next);
    }
  }

  /// c_k, the coefficient of x^(p^k), k = 0..s.
  const std::vector<Element>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size() - 1; }
  Element c0() const { return coeffs_[0]; }

  Element eval(Element y) const {
    Element acc = field_.zero(), frob = y;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      acc = field_.add(acc, field_.mul(coeffs_[k], frob));
      frob = field_.pow(frob, field_.p());
    }
    return acc;
  }

  /// L_V(a * y) / y evaluated termwise as sum_k c_k a^(p^k) y^(p^k - 1); valid at y = 0.
  Element eval_divided(Element a, Element y) const {
    Element acc = field_.zero();
    std::uint64_t pk = 1;
    for (std::size_t k = 0; k < coeffs_.size(); ++k, pk *= field_.p())
      acc = field_.add(acc, field_.mul(coeffs_[k], field_.mul(field_.pow(a, pk), field_.pow(y, pk - 1))));
    return acc;
  }

 private:
  Field field_;
  std::vector<Element> coeffs_;
};

}  // namespace grmrepair
