// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hwc/families.hpp"
#include "hwc/unipoly.hpp"

namespace hwc {
namespace {

UniPoly random_poly(std::mt19937_64& rng, std::size_t max_degree, const PrimeModulus& mod) {
  std::vector<u64> c(rng() % (max_degree + 1) + 1);
  for (u64& x : c) x = rng() % mod.p();
  return UniPoly(std::move(c), mod);
}

TEST(UniPoly, TrimmedCanonicalForm) {
  const PrimeModulus mod(5);
  const UniPoly f({1, 2, 0, 5, 10}, mod);
  EXPECT_EQ(f.degree(), 1u);
  EXPECT_EQ(std::vector<u64>(f.raw().begin(), f.raw().end()), (std::vector<u64>{1, 2}));
  const UniPoly zero({0, 5}, mod);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_FALSE(zero.degree().has_value());
  EXPECT_EQ(zero, UniPoly(mod));
}

TEST(PolyMul, Examples) {
  const PrimeModulus mod(5);
  EXPECT_EQ(poly_mul(UniPoly({1, 1}, mod), UniPoly({-1, 1}, mod)), UniPoly({4, 0, 1}, mod));
  EXPECT_TRUE(poly_mul(UniPoly({3, 1, 4}, mod), UniPoly(mod)).is_zero());
  EXPECT_EQ(poly_mul(UniPoly({1, 0, 1}, mod), UniPoly({1, 0, 1}, mod)), UniPoly({1, 0, 2, 0, 1}, mod));
  EXPECT_THROW(poly_mul(UniPoly({1}, mod), UniPoly({1}, PrimeModulus(7))), ModulusError);
}

TEST(PolyGcd, Examples) {
  const PrimeModulus mod(7);
  EXPECT_EQ(poly_gcd(UniPoly({-1, 0, 1}, mod), UniPoly({-1, 1}, mod)), UniPoly({-1, 1}, mod));
  EXPECT_EQ(poly_gcd(UniPoly({2, 4, 3}, mod), UniPoly(mod)), UniPoly({2, 4, 3}, mod).monic());
  EXPECT_THROW(poly_gcd(UniPoly(mod), UniPoly(mod)), DomainError);
}

TEST(PolyGcd, EuclidByHand) {
  // Over F_5: r^2 + 1 = (r - 2)(r - 3) and r^2 + r = r (r + 1); coprime.
  const PrimeModulus m5(5);
  EXPECT_EQ(poly_gcd(UniPoly({1, 0, 1}, m5), UniPoly({0, 1, 1}, m5)), UniPoly({1}, m5));
  // Over F_7: r^2 + 1 is irreducible, r^2 - 1 = (r - 1)(r + 1).
  const PrimeModulus m7(7);
  const UniPoly a = UniPoly({-1, 1}, m7) * UniPoly({1, 0, 1}, m7);
  const UniPoly b = UniPoly({1, 0, 1}, m7) * UniPoly({1, 1}, m7);
  EXPECT_EQ(poly_gcd(a, b), UniPoly({1, 0, 1}, m7));
}

TEST(Derivative, Examples) {
  const PrimeModulus mod(5);
  EXPECT_TRUE(derivative(UniPoly::monomial(Fp::one(mod), 5)).is_zero());  // p | exponent
  EXPECT_EQ(derivative(UniPoly({1, 1, 1}, mod)), UniPoly({1, 2}, mod));
  EXPECT_TRUE(derivative(UniPoly({3}, mod)).is_zero());
}

TEST(IsSeparable, Examples) {
  const PrimeModulus mod(7);
  EXPECT_TRUE(is_separable(UniPoly({-1, 0, 1}, mod)));
  EXPECT_FALSE(is_separable(UniPoly({-1, 1}, mod).pow(2)));
  EXPECT_THROW(is_separable(UniPoly(mod)), DomainError);
  const C6CoeffPolys polys = c6_coeff_polys(PrimeModulus(17));
  EXPECT_TRUE(is_separable(*polys.c2));
}

TEST(Eval, Examples) {
  const PrimeModulus mod(5);
  const UniPoly f({1, 0, 1}, mod);
  EXPECT_TRUE(f(Fp(2, mod)).is_zero());
  EXPECT_EQ(UniPoly({3, 1, 4}, mod)(Fp::zero(mod)), Fp(3, mod));
  EXPECT_THROW(f(Fp(1, PrimeModulus(7))), ModulusError);
}

TEST(Eval, RingHomomorphismOnRandomTriples) {
  const PrimeModulus mod(101);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const UniPoly f = random_poly(rng, 12, mod);
    const UniPoly g = random_poly(rng, 12, mod);
    const Fp x = Fp::from_u64(rng(), mod);
    const Fp2 y(Fp::from_u64(rng(), mod), Fp::from_u64(rng(), mod));
    EXPECT_EQ((f * g)(x), f(x) * g(x));
    EXPECT_EQ((f + g)(x), f(x) + g(x));
    EXPECT_EQ((f * g)(y), f(y) * g(y));
  }
}

TEST(Divmod, EuclideanLaw) {
  const PrimeModulus mod(13);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const UniPoly f = random_poly(rng, 20, mod);
    UniPoly g = random_poly(rng, 8, mod);
    if (g.is_zero()) g = UniPoly({1}, mod);
    const auto [q, r] = divmod(f, g);
    EXPECT_EQ(q * g + r, f);
    if (!r.is_zero()) {
      EXPECT_LT(*r.degree(), *g.degree());
    }
  }
  EXPECT_THROW(divmod(UniPoly({1}, mod), UniPoly(mod)), DomainError);
}

TEST(Divides, Examples) {
  const PrimeModulus mod(5);
  EXPECT_TRUE(divides(UniPoly({-1, 1}, mod), UniPoly({-1, 0, 1}, mod)));
  EXPECT_FALSE(divides(UniPoly({1, 1, 1}, mod), UniPoly({-1, 0, 1}, mod)));
  EXPECT_TRUE(divides(UniPoly({2, 1}, mod), UniPoly(mod)));
  EXPECT_THROW(divides(UniPoly(mod), UniPoly({1}, mod)), DomainError);
  const C6CoeffPolys polys = c6_coeff_polys(PrimeModulus(23));
  EXPECT_TRUE(divides(*polys.c2, *polys.c1));
}

TEST(RootsOver, Examples) {
  const PrimeModulus m7(7);
  const auto roots = roots_over(UniPoly({-1, 0, 1}, m7), 1);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], Fp2(Fp(1, m7)));
  EXPECT_EQ(roots[1], Fp2(Fp(6, m7)));

  const i64 s = static_cast<i64>(m7.nonresidue());
  const UniPoly f({-s, 0, 1}, m7);
  EXPECT_TRUE(roots_over(f, 1).empty());
  const auto ext = roots_over(f, 2);
  ASSERT_EQ(ext.size(), 2u);
  const Fp2 w = Fp2::omega(m7);
  EXPECT_TRUE(std::find(ext.begin(), ext.end(), w) != ext.end());
  EXPECT_TRUE(std::find(ext.begin(), ext.end(), -w) != ext.end());
}

TEST(RootsOver, C2AtSeventeenSplitsOverFp2) {
  const PrimeModulus mod(17);
  const UniPoly c2 = *c6_coeff_polys(mod).c2;
  ASSERT_EQ(c2.degree(), 2u);
  const auto roots = roots_over(c2, 2);
  EXPECT_EQ(roots.size(), 2u);
  for (const Fp2& z : roots) EXPECT_TRUE(c2(z).is_zero());
}

TEST(RootsOver, SeparableRootCountBoundedByDegree) {
  const PrimeModulus mod(11);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const UniPoly f = random_poly(rng, 6, mod);
    if (f.is_zero() || f.is_constant() || !is_separable(f)) continue;
    EXPECT_LE(roots_over(f, 2).size(), *f.degree());
  }
  // (r^2 - s)(r - 1) splits over F_{p^2}: equality.
  const i64 s = static_cast<i64>(mod.nonresidue());
  const UniPoly split = UniPoly({-s, 0, 1}, mod) * UniPoly({-1, 1}, mod);
  EXPECT_EQ(roots_over(split, 2).size(), 3u);
}

TEST(RootsOver, CapacityAndZero) {
  const PrimeModulus mod(503);
  EXPECT_THROW(roots_over(UniPoly({1, 1}, mod), 2), CapacityError);
  EXPECT_NO_THROW(roots_over(UniPoly({1, 1}, mod), 1));
  EXPECT_THROW(roots_over(UniPoly(mod), 1), DomainError);
}

}  // namespace
}  // namespace hwc
