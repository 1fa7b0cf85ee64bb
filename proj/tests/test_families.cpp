// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hwc/families.hpp"
#include "hwc/hwcore.hpp"

namespace hwc {
namespace {

/// X^e mod f.
UniPoly pow_x_mod(u64 e, const UniPoly& f) {
  const PrimeModulus& mod = f.modulus();
  UniPoly result = UniPoly::constant(Fp::one(mod));
  UniPoly base = divmod(UniPoly::monomial(Fp::one(mod), 1), f).second;
  while (e != 0) {
    if (e & 1u) result = divmod(result * base, f).second;
    e >>= 1;
    if (e != 0) base = divmod(base * base, f).second;
  }
  return result;
}

/// Product of the distinct linear factors of f over F_{p^2}:
/// gcd(f, X^(p^2) - X).
UniPoly fp2_split_part(const UniPoly& f) {
  const PrimeModulus& mod = f.modulus();
  const UniPoly x = UniPoly::monomial(Fp::one(mod), 1);
  return poly_gcd(f, pow_x_mod(mod.p() * mod.p(), f) - x);
}

TEST(CoeffOfPower, Examples) {
  const PrimeModulus m5(5);
  EXPECT_EQ(coeff_of_power((5 - 2) / 3, 4, m5), UniPoly({1}, m5));
  const PrimeModulus m11(11);
  EXPECT_EQ(coeff_of_power((11 - 2) / 3, 10, m11), UniPoly({0, 3}, m11));
  for (i64 m : {1, 3, 7, 9}) EXPECT_TRUE(coeff_of_power(3, m, m11).is_zero());
  EXPECT_THROW(coeff_of_power(11, 2, m11), DomainError);
}

TEST(CoeffOfPower, MatchesDirectExpansion) {
  const PrimeModulus mod(13);
  for (i64 s = 0; s < 13; ++s) {
    // Expand (y^4 + r y^2 + 1)^s with coefficients in F_p[r] keyed by y-degree.
    std::vector<UniPoly> acc{UniPoly({1}, mod)};
    for (i64 t = 0; t < s; ++t) {
      std::vector<UniPoly> next(acc.size() + 4, UniPoly(mod));
      for (std::size_t m = 0; m < acc.size(); ++m) {
        next[m + 4] = next[m + 4] + acc[m];
        next[m + 2] = next[m + 2] + UniPoly({0, 1}, mod) * acc[m];
        next[m] = next[m] + acc[m];
      }
      acc = std::move(next);
    }
    for (std::size_t m = 0; m < acc.size(); ++m) EXPECT_EQ(coeff_of_power(s, static_cast<i64>(m), mod), acc[m]);
  }
}

TEST(C6CoeffPolys, Examples) {
  const PrimeModulus m5(5);
  EXPECT_EQ(*c6_coeff_polys(m5).c2, UniPoly({4}, m5));
  const PrimeModulus m11(11);
  EXPECT_EQ(*c6_coeff_polys(m11).c2, UniPoly({0, 8}, m11));
  const C6CoeffPolys p13 = c6_coeff_polys(PrimeModulus(13));
  EXPECT_FALSE(p13.antidiagonal());
  EXPECT_EQ(p13.ct1->degree(), 2u);
}

TEST(C6Hw, MatchesOracleForSmallPrimes) {
  for (u64 p : {5u, 7u, 11u, 13u}) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    for (u64 rv = 0; rv < p; ++rv) {
      const Fp r = Fp::from_u64(rv, mod);
      if (!c6_nonsingular(r)) continue;
      EXPECT_EQ(c6_hw(polys, r), hw_matrix_oracle(c6_form(r))) << "p=" << p << " r=" << rv;
    }
  }
}

TEST(C6Hw, MatchesFastPathUpTo200) {
  for (u64 p : primes_in(5, 200)) {
    const PrimeModulus mod(p);
    const FactorialTable facts(mod);
    const C6CoeffPolys polys = c6_coeff_polys(facts);
    for (u64 rv = 0; rv < p; ++rv) {
      const Fp r = Fp::from_u64(rv, mod);
      if (!c6_nonsingular(r)) continue;
      ASSERT_EQ(c6_hw(polys, r), hw_matrix(c6_form(r), facts)) << "p=" << p << " r=" << rv;
    }
  }
}

TEST(C6Hw, Examples) {
  const PrimeModulus m5(5);
  const HWMatrix<Fp> h5 = c6_hw(m5, Fp(1, m5));
  EXPECT_TRUE(h5.is_antidiagonal());
  EXPECT_EQ(h5.at(2, 0), Fp(4, m5));

  const PrimeModulus m7(7);
  const HWMatrix<Fp> h7 = c6_hw(m7, Fp(1, m7));
  EXPECT_TRUE(h7.is_diagonal());
  EXPECT_FALSE(h7.at(1, 1).is_zero());

  const PrimeModulus m17(17);
  const C6CoeffPolys polys = c6_coeff_polys(m17);
  for (const Fp2& z : roots_over(*polys.c2, 2)) EXPECT_LE(rank3(c6_hw(polys, z)), 1);

  EXPECT_THROW(c6_hw(m7, Fp(2, m7)), DomainError);
  EXPECT_THROW(c6_hw(m7, Fp(-2, m7)), DomainError);
}

TEST(C6Hw, Fp2ParameterMatchesOracle) {
  const PrimeModulus mod(13);
  const C6CoeffPolys polys = c6_coeff_polys(mod);
  for (u64 a : {0u, 3u}) {
    for (u64 b : {1u, 7u}) {
      const Fp2 r(Fp::from_u64(a, mod), Fp::from_u64(b, mod));
      EXPECT_EQ(c6_hw(polys, r), hw_matrix_oracle(c6_form(r)));
    }
  }
}

TEST(C6Classify, TableRows) {
  const PrimeModulus m13(13);
  const C6CoeffPolys p13 = c6_coeff_polys(m13);
  const Classification ord = c6_classify(p13, Fp(1, m13));
  EXPECT_EQ(ord, (Classification{0, 3, newton_polygon::kOrdinary, {1, 2, 3}}));

  const PrimeModulus m17(17);
  const C6CoeffPolys p17 = c6_coeff_polys(m17);
  const Classification ss = c6_classify(p17, Fp(5, m17));  // 5 is a root of c2 at p = 17
  EXPECT_EQ(ss, (Classification{3, 0, newton_polygon::kSupersingular, {0, 0, 0}}));
  const Classification one = c6_classify(p17, Fp(1, m17));
  EXPECT_EQ(one, (Classification{1, 2, newton_polygon::kTwoOrdinary, {1, 2, 2}}));

  EXPECT_THROW(c6_classify(p13, Fp(0, m13)), DomainError);
  EXPECT_THROW(c6_classify(p13, Fp(2, m13)), DomainError);
}

TEST(Classification, TablesSatisfyEkedahlOortRules) {
  for (u64 p : {7u, 11u}) {
    for (int a = 0; a <= 3; ++a) {
      if (const auto row = c6_table(p, a)) {
        EXPECT_TRUE((Classification{row->a_number, row->p_rank, row->newton_polygon, row->eo_type}.consistent()));
      }
    }
  }
  for (u64 p : {19u, 5u, 7u, 17u}) {
    const TableRow row = c9_table(p);
    EXPECT_TRUE((Classification{row.a_number, row.p_rank, row.newton_polygon, row.eo_type}.consistent()));
  }
  EXPECT_FALSE((Classification{1, 0, "", {0, 2, 2}}.consistent()));
  EXPECT_THROW(c9_table(3), DomainError);
}

TEST(C6Isomorphic, Examples) {
  const PrimeModulus m11(11);
  EXPECT_TRUE(c6_isomorphic(Fp(4, m11), Fp(-4, m11)));
  EXPECT_TRUE(c6_isomorphic(Fp(4, m11), Fp(4, m11)));
  EXPECT_FALSE(c6_isomorphic(Fp(1, m11), Fp(3, m11)));
}

TEST(C6IsomorphicCurves, ShareHasseWittRanks) {
  const PrimeModulus mod(29);
  const C6CoeffPolys polys = c6_coeff_polys(mod);
  for (u64 rv = 1; rv < 29; ++rv) {
    const Fp r = Fp::from_u64(rv, mod);
    if (!c6_nonsingular(r)) continue;
    EXPECT_EQ(a_number(c6_hw(polys, r)), a_number(c6_hw(polys, -r)));
  }
}

TEST(C6CountMaxA, Examples) {
  EXPECT_EQ(c6_count_max_a(PrimeModulus(5)), 0);
  EXPECT_EQ(c6_count_max_a(PrimeModulus(13)), 1);
  EXPECT_EQ(c6_count_max_a(PrimeModulus(37)), 3);
}

TEST(C6CountMaxA, BothFormulasUpTo1000) {
  for (u64 p : primes_in(5, 1000)) {
    const int n = c6_count_max_a(PrimeModulus(p));
    EXPECT_EQ(static_cast<u64>(n), p / 12) << p;
    EXPECT_EQ(static_cast<u64>(n), p % 6 == 5 ? (p - 5) / 12 : (p - 1) / 12) << p;
  }
}

TEST(C6CountMaxA, SmallPrimesMatchAttainedClasses) {
  // With every root in F_p^2, count the +-r classes of max-a curves directly.
  for (u64 p : {13u, 17u, 23u, 29u, 37u, 41u}) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const int max_a = polys.antidiagonal() ? 3 : 2;
    const Fp2 two(Fp(2, mod));
    std::set<std::pair<u64, u64>> classes;
    int total_roots = 0;
    for (const Fp2& r : roots_over(polys.antidiagonal() ? *polys.c2 : *polys.ct1, 2)) {
      ++total_roots;
      if (r.is_zero() || r == two || r == -two) continue;
      EXPECT_EQ(a_number(c6_hw(polys, r)), max_a);
      const Fp2 sq = r * r;
      classes.insert({sq.re().value(), sq.im().value()});
    }
    const C6CountDetail d = c6_count_detail(polys);
    if (static_cast<std::size_t>(total_roots) == d.degree) {
      EXPECT_EQ(static_cast<int>(classes.size()), d.count) << p;
    }
  }
}

TEST(C6Polys, DivisibilityDegreesSeparabilityUpTo500) {
  for (u64 p : primes_in(5, 500)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const Fp two(2, mod);
    if (polys.antidiagonal()) {
      const UniPoly& c1 = *polys.c1;
      const UniPoly& c2 = *polys.c2;
      EXPECT_TRUE(divides(c2, c1)) << p;
      EXPECT_TRUE(is_separable(c2)) << p;
      EXPECT_FALSE(c2(two).is_zero()) << p;
      EXPECT_FALSE(c2(-two).is_zero()) << p;
      EXPECT_EQ(c2.degree(), (p - 5) / 6) << p;
      EXPECT_EQ(c1.degree(), (p - 1) / 2) << p;
      EXPECT_EQ(c2(Fp::zero(mod)).is_zero(), p % 12 == 11) << p;
    } else {
      EXPECT_TRUE(divides(*polys.ct1, *polys.ct3)) << p;
      EXPECT_EQ(polys.ct1->degree(), (p - 1) / 6) << p;
      EXPECT_TRUE(is_separable(*polys.ct1)) << p;
    }
  }
}

TEST(C6Polys, Ct2HasNoRootsOutsidePlusMinusTwo) {
  for (u64 p : primes_in(5, 500)) {
    if (p % 6 != 1) continue;
    const PrimeModulus mod(p);
    const UniPoly split = fp2_split_part(*c6_coeff_polys(mod).ct2);
    EXPECT_TRUE(divides(split, UniPoly({-4, 0, 1}, mod))) << p << ": " << split;
  }
}

TEST(C6Polys, SplitPartAgreesWithExhaustiveRoots) {
  for (u64 p : {7u, 13u, 17u, 23u, 29u}) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const UniPoly& f = polys.antidiagonal() ? *polys.c1 : *polys.ct2;
    EXPECT_EQ(roots_over(f, 2).size(), *fp2_split_part(f).degree()) << p;
  }
}

TEST(C6Structure, ShapeAndAttainedANumbersUpTo500) {
  for (u64 p : primes_in(5, 500)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    std::set<int> attained;
    for (u64 rv = 1; rv < p; ++rv) {
      const Fp r = Fp::from_u64(rv, mod);
      if (!c6_nonsingular(r)) continue;
      const HWMatrix<Fp> h = c6_hw(polys, r);
      if (polys.antidiagonal()) {
        ASSERT_TRUE(h.is_antidiagonal() && h.at(1, 1).is_zero()) << p;
      } else {
        ASSERT_TRUE(h.is_diagonal()) << p;
      }
      attained.insert(a_number(h));
      const Classification c = c6_classify(polys, r);
      EXPECT_EQ(stable_rank(h), c.p_rank);
      EXPECT_NE(rank3(h), polys.antidiagonal() ? 1 : 2);
    }
    EXPECT_EQ(attained.count(polys.antidiagonal() ? 2 : 1), 0u) << p;
  }
}

TEST(C9Hw, Examples) {
  const HWMatrix<Fp> h19 = c9_hw(PrimeModulus(19));
  EXPECT_TRUE(h19.is_diagonal());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_FALSE(h19.at(i, i).is_zero());
  EXPECT_TRUE(c9_hw(PrimeModulus(17)).is_zero());
  const HWMatrix<Fp> h13 = c9_hw(PrimeModulus(13));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(h13.at(r, c).is_zero(), !(r == 2 && c == 1));
  }
}

TEST(C9Hw, MatchesOracleAndFastPath) {
  for (u64 p : primes_in(5, 31)) {
    const PrimeModulus mod(p);
    EXPECT_EQ(c9_hw(mod), hw_matrix_oracle(c9_form(mod))) << p;
  }
  for (u64 p : primes_in(5, 2000)) {
    const PrimeModulus mod(p);
    ASSERT_EQ(c9_hw(mod), hw_matrix(c9_form(mod))) << p;
  }
}

TEST(C9SlotExponents, SolveAndTableAgreeAsMultisets) {
  for (u64 p : primes_in(5, 2000)) {
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        auto solved = c9_slot_exponents(p, r, c);
        auto listed = c9_slot_exponents_table(p, r, c);
        ASSERT_EQ(solved.has_value(), listed.has_value()) << p << " " << r << c;
        if (!solved) continue;
        std::sort(solved->begin(), solved->end());
        std::sort(listed->begin(), listed->end());
        EXPECT_EQ(*solved, *listed);
      }
    }
  }
}

TEST(C9Classify, ResidueClasses) {
  EXPECT_EQ(c9_classify(PrimeModulus(11)), (Classification{1, 0, newton_polygon::kSupersingular, {0, 1, 2}}));
  EXPECT_EQ(c9_classify(PrimeModulus(23)), (Classification{1, 0, newton_polygon::kSupersingular, {0, 1, 2}}));
  EXPECT_EQ(c9_classify(PrimeModulus(13)), (Classification{2, 0, newton_polygon::kSlopeThirds, {0, 1, 1}}));
  EXPECT_EQ(c9_classify(PrimeModulus(7)), (Classification{2, 0, newton_polygon::kSlopeThirds, {0, 1, 1}}));
  EXPECT_EQ(c9_classify(PrimeModulus(17)), (Classification{3, 0, newton_polygon::kSupersingular, {0, 0, 0}}));
  EXPECT_EQ(c9_classify(PrimeModulus(19)), (Classification{0, 3, newton_polygon::kOrdinary, {1, 2, 3}}));
}

TEST(C9Classify, ComputedRanksMatchTableUpTo1000) {
  for (u64 p : primes_in(5, 1000)) {
    const PrimeModulus mod(p);
    const HWMatrix<Fp> h = c9_hw(mod);
    const TableRow row = c9_table(p);
    EXPECT_EQ(a_number(h), row.a_number) << p;
    EXPECT_EQ(stable_rank(h), row.p_rank) << p;
    EXPECT_TRUE(c9_classify(mod).consistent()) << p;
  }
}

}  // namespace
}  // namespace hwc
