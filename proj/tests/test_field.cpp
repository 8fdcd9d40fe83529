// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "grmrepair/field.hpp"
#include "grmrepair/fp_linalg.hpp"
#include "grmrepair/subspace.hpp"

using namespace grmrepair;

namespace {

// Independent oracle: repeated squaring through the schoolbook product.
Element pow_oracle(const Field& f, Element a, std::uint64_t e) {
  Element r = f.one();
  for (std::uint64_t i = 0; i < e; ++i) r = f.mul_schoolbook(r, a);
  return r;
}

std::uint32_t trace_oracle(const Field& f, Element a) {
  Element acc = f.zero(), x = a;
  for (std::uint32_t i = 0; i < f.t(); ++i) {
    acc = f.add(acc, x);
    x = pow_oracle(f, x, f.p());
  }
  EXPECT_LT(acc.rank, f.p());
  return acc.rank;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 2}, {2, 8}, {3, 3}, {7, 2}};

}  // namespace

TEST(Field, RejectsBadSpecs) {
  EXPECT_THROW(Field(4, 2), std::invalid_argument);
  EXPECT_THROW(Field(FieldSpec{2, 2, {1, 0, 1}}), std::invalid_argument);  // x^2+1 = (x+1)^2
  EXPECT_THROW(Field(FieldSpec{2, 2, {1, 1, 0}}), std::invalid_argument);  // not monic of degree 2
  EXPECT_NO_THROW(Field(FieldSpec{2, 2, {1, 1, 1}}));
}

TEST(Field, DefaultModulusForF16) {
  Field f(2, 4);
  EXPECT_EQ(f.spec().modulus, (std::vector<std::uint32_t>{1, 0, 0, 1, 1}));
  const Element xi = f.generator();
  // xi^4 = xi^3 + 1
  EXPECT_EQ(f.pow(xi, 4), f.add(f.pow(xi, 3), f.one()));
  EXPECT_EQ(f.pow(xi, 4).rank, 0b1001u);
}

TEST(Field, F4Multiplication) {
  Field f(FieldSpec{2, 2, {1, 1, 1}});
  const Element w = f.generator();
  EXPECT_EQ(f.mul(w, w), f.add(w, f.one()));
  EXPECT_EQ(f.inv(f.one()), f.one());
  EXPECT_EQ(f.trace(w), 1u);
}

TEST(Field, InverseOfZero) {
  Field f(2, 3);
  try {
    f.inv(f.zero());
    FAIL();
  } catch (const DivisionByZero& e) {
    EXPECT_STREQ(e.what(), "division by zero");
  }
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (auto [p, t] : kFields) {
    Field f(p, t);
    std::uniform_int_distribution<std::uint32_t> d(0, f.q() - 1);
    for (int k = 0; k < 300; ++k) {
      const Element a{d(rng)}, b{d(rng)}, c{d(rng)};
      EXPECT_EQ(f.mul(a, b), f.mul_schoolbook(a, b));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (a.rank) {
        EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      }
      EXPECT_EQ(f.pow(a, 5), pow_oracle(f, a, 5));
    }
  }
}

TEST(Field, TraceMatchesPowerSumOracleAndIsBalanced) {
  for (auto [p, t] : kFields) {
    Field f(p, t);
    if (f.q() > 256) continue;
    std::vector<std::size_t> hist(p, 0);
    for (std::uint32_t r = 0; r < f.q(); ++r) {
      const auto tr = f.trace(Element{r});
      EXPECT_EQ(tr, trace_oracle(f, Element{r}));
      ++hist[tr];
    }
    for (auto h : hist) EXPECT_EQ(h, f.q() / p);
  }
}

TEST(Field, TraceIsLinear) {
  std::mt19937_64 rng(3);
  for (auto [p, t] : kFields) {
    Field f(p, t);
    std::uniform_int_distribution<std::uint32_t> d(0, f.q() - 1);
    for (int k = 0; k < 100; ++k) {
      const Element a{d(rng)}, b{d(rng)};
      const std::uint32_t lam = k % p;
      EXPECT_EQ(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
      EXPECT_EQ(f.trace(f.scale(lam, a)), (lam * f.trace(a)) % p);
    }
  }
}

TEST(DualBasis, TraceTableAndReconstruction) {
  std::mt19937_64 rng(5);
  for (auto [p, t] : kFields) {
    Field f(p, t);
    std::vector<std::vector<Element>> bases = {f.canonical_basis()};
    // a random basis too
    std::uniform_int_distribution<std::uint32_t> d(1, f.q() - 1);
    while (bases.size() < 2) {
      std::vector<Element> b;
      for (std::uint32_t i = 0; i < t; ++i) b.push_back(Element{d(rng)});
      if (rank_over_fp(f, b) == t) bases.push_back(b);
    }
    for (const auto& basis : bases) {
      const auto eta = dual_basis(f, basis);
      for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = 0; j < t; ++j) EXPECT_EQ(f.trace(f.mul(basis[i], eta[j])), i == j ? 1u : 0u);
      std::uniform_int_distribution<std::uint32_t> any(0, f.q() - 1);
      for (int k = 0; k < 20; ++k) {
        const Element c{any(rng)};
        Element r = f.zero();
        for (std::uint32_t j = 0; j < t; ++j) r = f.add(r, f.scale(f.trace(f.mul(basis[j], c)), eta[j]));
        EXPECT_EQ(r, c);
      }
    }
  }
}

TEST(DualBasis, TrivialAndDeficient) {
  Field f1(5, 1);
  EXPECT_EQ(dual_basis(f1, std::vector<Element>{f1.one()}), std::vector<Element>{f1.one()});
  Field f(2, 3);
  const std::vector<Element> bad = {f.one(), f.generator(), f.add(f.one(), f.generator())};
  EXPECT_THROW(dual_basis(f, bad), RankDeficient);
}

TEST(SpanBasis, CombinationsReproduceInputs) {
  Field f(2, 4);
  const Element xi = f.generator();
  EXPECT_EQ(span_basis(f, std::vector<Element>{f.zero(), f.zero()}).dim, 0u);
  const std::vector<Element> v = {f.one(), xi, f.add(f.one(), xi)};
  const auto sp = span_basis(f, v);
  EXPECT_EQ(sp.dim, 2u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Element r = f.zero();
    for (std::size_t k = 0; k < sp.dim; ++k) r = f.add(r, f.scale(sp.coords[i][k], sp.basis[k]));
    EXPECT_EQ(r, v[i]);
  }
  Field g(3, 2);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint32_t> d(0, g.q() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element> w;
    for (int k = 0; k < 4; ++k) w.push_back(Element{d(rng)});
    const auto s = span_basis(g, w);
    EXPECT_EQ(s.dim, rank_over_fp(g, w));
    for (std::size_t i = 0; i < w.size(); ++i) {
      Element r = g.zero();
      for (std::size_t k = 0; k < s.dim; ++k) r = g.add(r, g.scale(s.coords[i][k], s.basis[k]));
      EXPECT_EQ(r, w[i]);
    }
  }
}

TEST(SolveFp, SolvesAndReportsSingular) {
  const FpMatrix a = {{1, 2, 0}, {0, 1, 1}, {2, 0, 1}};
  const FpVector b = {1, 2, 0};
  const auto x = solve_fp(a, b, 3);
  EXPECT_EQ(mat_vec(a, x, 3), b);
  const FpMatrix s = {{1, 1}, {2, 2}};
  try {
    solve_fp(s, {1, 2}, 3);
    FAIL();
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.rank(), 1u);
  }
}

TEST(Subspace, F4InsideF16) {
  Field f(2, 4);
  const Element xi = f.generator();
  const Subspace v(f, {f.one(), f.pow(xi, 5)});
  const auto elems = v.elements(f);
  const std::set<Element> expect = {f.zero(), f.one(), f.pow(xi, 5), f.pow(xi, 10)};
  EXPECT_EQ(std::set<Element>(elems.begin(), elems.end()), expect);
  for (std::uint32_t r = 0; r < f.q(); ++r) {
    const Element y{r};
    EXPECT_EQ(subspace_poly_eval(f, v, y), f.sub(f.pow(y, 4), y));
  }
  EXPECT_EQ(subspace_c0(f, v), f.one());
  const LinearizedPoly lp(f, v);
  // L_V = x^4 - x: coefficients of x and x^2 and x^4
  EXPECT_EQ(lp.coeffs(), (std::vector<Element>{f.neg(f.one()), f.zero(), f.one()}));
}

TEST(Subspace, EmptyProductAndValidation) {
  Field f(3, 2);
  EXPECT_EQ(subspace_c0(f, Subspace(f, {})), f.one());
  EXPECT_THROW(Subspace(f, {f.one(), f.constant(2)}), RankDeficient);
}

TEST(Subspace, KernelImageAndLinearizedForm) {
  for (auto [p, t] : kFields) {
    Field f(p, t);
    if (f.q() > 256) continue;
    for (std::uint32_t s = 0; s <= t; ++s) {
      const Subspace v = Subspace::canonical(f, s);
      const LinearizedPoly lp(f, v);
      EXPECT_EQ(lp.c0(), subspace_c0(f, v));
      std::vector<Element> image;
      std::size_t kernel = 0;
      for (std::uint32_t r = 0; r < f.q(); ++r) {
        const Element y{r};
        const Element direct = subspace_poly_eval(f, v, y);
        EXPECT_EQ(direct, lp.eval(y));
        if (direct.rank == 0) {
          ++kernel;
          EXPECT_TRUE(v.contains(f, y));
        }
        image.push_back(direct);
        // L(a y) / y agrees with the divided form for y != 0
        if (r) EXPECT_EQ(lp.eval_divided(f.generator(), y), f.div(lp.eval(f.mul(f.generator(), y)), y));
      }
      EXPECT_EQ(kernel, v.elements(f).size());
      EXPECT_EQ(span_basis(f, image).dim, t - s);
      EXPECT_EQ(lp.eval_divided(f.generator(), f.zero()), f.mul(lp.c0(), f.generator()));
    }
  }
}
