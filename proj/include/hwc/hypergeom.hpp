// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Truncated Gauss hypergeometric series mod p,
//
//   G^d(a, b, c; t) = sum_{n=0}^{d} (a;n)(b;n) / ((c;n)(1;n)) t^n,
//
// with rational parameters reduced to residues mod p, and checkers for the
// hypergeometric identities behind the C6 entry polynomials c1, c2.

#pragma once

#include <cstddef>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "hwc/families.hpp"
#include "hwc/ffield.hpp"
#include "hwc/unipoly.hpp"

namespace hwc {

/// num/den in lowest terms with den > 0.
class RationalParam {
 public:
  RationalParam(i64 num, i64 den = 1) {  // NOLINT(google-explicit-constructor)
    if (den == 0) throw DomainError("rational parameter with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i64 g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
  }

  i64 num() const noexcept { return num_; }
  i64 den() const noexcept { return den_; }

  /// The residue num * den^{-1} mod p.
  Fp reduce(const PrimeModulus& mod) const {
    if (static_cast<u64>(den_) % mod.p() == 0) {
      throw DomainError("denominator " + std::to_string(den_) + " is divisible by p = " +
                        std::to_string(mod.p()));
    }
    return Fp(num_, mod) / Fp(den_, mod);
  }

  friend bool operator==(const RationalParam&, const RationalParam&) = default;

  friend std::ostream& operator<<(std::ostream& os, const RationalParam& x) {
    os << x.num_;
    if (x.den_ != 1) os << '/' << x.den_;
    return os;
  }

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

/// Rising factorial (x;n) = x (x+1) ... (x+n-1) mod p.
inline Fp pochhammer(const RationalParam& x, i64 n, const PrimeModulus& mod) {
  if (n < 0) throw DomainError("negative Pochhammer length");
  const Fp base = x.reduce(mod);
  Fp acc = Fp::one(mod);
  for (i64 k = 0; k < n; ++k) acc *= base + Fp(k, mod);
  return acc;
}

struct TruncatedSeries {
  UniPoly poly;
  RationalParam a, b, c;
  i64 truncation;
};

/// G^d(a, b, c; t) mod p. A vanishing (c;n) or (1;n) with n <= d is a pole.
inline TruncatedSeries gauss_truncated(const RationalParam& a, const RationalParam& b,
                                       const RationalParam& c, i64 d, const PrimeModulus& mod) {
  if (d < 0) throw DomainError("negative truncation degree");
  const Fp ra = a.reduce(mod);
  const Fp rb = b.reduce(mod);
  const Fp rc = c.reduce(mod);
  std::vector<u64> coeffs(static_cast<std::size_t>(d) + 1);
  Fp num = Fp::one(mod);
  Fp den = Fp::one(mod);
  coeffs[0] = 1;
  for (i64 n = 1; n <= d; ++n) {
    const Fp k(n - 1, mod);
    num *= (ra + k) * (rb + k);
    den *= (rc + k) * Fp(n, mod);
    if (den.is_zero()) {
      throw PoleError("(c;n)(1;n) vanishes mod " + std::to_string(mod.p()) + " at n = " +
                      std::to_string(n) + " for c = " + std::to_string(c.num()) + "/" +
                      std::to_string(c.den()));
    }
    coeffs[static_cast<std::size_t>(n)] = (num / den).value();
  }
  return {UniPoly(std::move(coeffs), mod), a, b, c, d};
}

namespace detail {

inline void require_five_mod_six(const PrimeModulus& mod) {
  if (mod.p() % 6 != 5) {
    throw DomainError("p = " + std::to_string(mod.p()) + " is not 5 mod 6");
  }
}

inline i64 as_i64(const PrimeModulus& mod) { return static_cast<i64>(mod.p()); }

}  // namespace detail

/// G^((p-1)/2)(1/3, 1/2, (2p+7)/6; t), feeding c1.
inline TruncatedSeries c1_series(const PrimeModulus& mod) {
  const i64 p = detail::as_i64(mod);
  return gauss_truncated({1, 3}, {1, 2}, {2 * p + 7, 6}, (p - 1) / 2, mod);
}

/// G^((p-5)/6)(5/6, 2/3, (2p+7)/6; t), feeding c2.
inline TruncatedSeries c2_series(const PrimeModulus& mod) {
  const i64 p = detail::as_i64(mod);
  return gauss_truncated({5, 6}, {2, 3}, {2 * p + 7, 6}, (p - 5) / 6, mod);
}

/// Euler's transformation G(a,b,c;t) = (1-t)^(c-a-b) G(c-a,c-b,c;t) for
/// (a,b,c) = (1/3, 1/2, (2p+7)/6), compared as polynomials after truncation.
inline bool verify_euler(const PrimeModulus& mod) {
  detail::require_five_mod_six(mod);
  const i64 p = detail::as_i64(mod);
  const UniPoly lhs = c1_series(mod).poly;
  const UniPoly one_minus_t({1, -1}, mod);
  const UniPoly rhs = one_minus_t.pow(static_cast<u64>((p + 1) / 3)) * c2_series(mod).poly;
  return lhs == rhs;
}

/// Roots alpha, beta of Y^2 - rY + 1 in F_{p^2}.
struct RootPair {
  Fp2 alpha;
  Fp2 beta;
};

inline RootPair reciprocal_root_pair(const Fp& r) {
  const PrimeModulus& mod = r.modulus();
  const Fp2 disc_root = sqrt_in_fp2(r * r - Fp(4, mod));
  const Fp2 half = Fp2(Fp(2, mod).inverse());
  return {(Fp2(r) + disc_root) * half, (Fp2(r) - disc_root) * half};
}

namespace detail {

/// sum_{i+j=n} C(h,i) C(h,j) alpha^i beta^j / C(h, k)
inline Fp2 symmetric_binomial_sum(i64 h, i64 n, i64 k, const RootPair& ab, const FactorialTable& facts) {
  const PrimeModulus& mod = facts.modulus();
  Fp2 acc = Fp2::zero(mod);
  for (i64 i = 0; i <= n; ++i) {
    const Fp w = facts.binomial(h, i) * facts.binomial(h, n - i);
    if (w.is_zero()) continue;
    acc += Fp2(w) * ab.alpha.pow(static_cast<u64>(i)) * ab.beta.pow(static_cast<u64>(n - i));
  }
  return acc * Fp2(facts.binomial(h, k).inverse());
}

}  // namespace detail

/// Pointwise check, at every r in F_p other than +-2, that
///
///   beta^((p-1)/2) G1(alpha/beta) = e1 = (alpha beta)^(-(p+1)/6) d1(r) / C((2p-1)/3, (p+1)/6)
///   beta^((p-5)/6) G2(alpha/beta) = e2 = d2(r) / C((p-2)/3, (p+1)/6)
///
/// where e1, e2 are evaluated from their symmetric-sum definitions and d1, d2
/// are the y-coefficient polynomials of the C6 family.
inline bool verify_gauss_lemma(const PrimeModulus& mod) {
  detail::require_five_mod_six(mod);
  const i64 p = detail::as_i64(mod);
  const FactorialTable facts(mod);
  const C6CoeffPolys polys = c6_coeff_polys(facts);
  const UniPoly g1 = c1_series(mod).poly;
  const UniPoly g2 = c2_series(mod).poly;
  const i64 h1 = (2 * p - 1) / 3;
  const i64 h2 = (p - 2) / 3;
  const i64 k = (p + 1) / 6;
  const Fp2 scale1(facts.binomial(h1, k).inverse());
  const Fp2 scale2(facts.binomial(h2, k).inverse());

  for (u64 rv = 0; rv < mod.p(); ++rv) {
    const Fp r = Fp::from_u64(rv, mod);
    if (!c6_nonsingular(r)) continue;
    const RootPair ab = reciprocal_root_pair(r);
    if (!(ab.alpha * ab.beta == Fp2::one(mod)) || !(ab.alpha + ab.beta == Fp2(r))) {
      throw IntegrityError("root pair of Y^2 - rY + 1 is wrong");
    }
    const Fp2 t = ab.alpha / ab.beta;

    const Fp2 series1 = ab.beta.pow(static_cast<u64>((p - 1) / 2)) * g1(t);
    const Fp2 e1 = detail::symmetric_binomial_sum(h1, (p - 1) / 2, k, ab, facts);
    const Fp2 from_d1 =
        (ab.alpha * ab.beta).inverse().pow(static_cast<u64>(k)) * Fp2((*polys.d1)(r)) * scale1;
    if (!(series1 == e1) || !(e1 == from_d1)) return false;

    const Fp2 series2 = ab.beta.pow(static_cast<u64>((p - 5) / 6)) * g2(t);
    const Fp2 e2 = detail::symmetric_binomial_sum(h2, (p - 5) / 6, k, ab, facts);
    const Fp2 from_d2 = Fp2((*polys.d2)(r)) * scale2;
    if (!(series2 == e2) || !(e2 == from_d2)) return false;
  }
  return true;
}

/// The three rising-factorial congruences used to turn Pochhammer ratios
/// into binomials, for 0 <= i <= (p-1)/2:
///
///   (-1)^i (1/3; i)    = ((2p-1)/3)! / ((2p-1)/3 - i)!
///   (-1)^i (1/2; i)    = ((p-1)/2)! / ((p-1)/2 - i)!
///   ((2p+7)/6; i)      = ((p+1)/6 + i)! / ((p+1)/6)!
inline bool verify_pochhammer_congruences(const PrimeModulus& mod) {
  detail::require_five_mod_six(mod);
  const i64 p = detail::as_i64(mod);
  const FactorialTable facts(mod);
  const i64 third = (2 * p - 1) / 3;
  const i64 half = (p - 1) / 2;
  const i64 sixth = (p + 1) / 6;
  for (i64 i = 0; i <= half; ++i) {
    const Fp sign = (i % 2 == 0) ? Fp::one(mod) : -Fp::one(mod);
    if (!(sign * pochhammer({1, 3}, i, mod) == facts.factorial(third) * facts.inverse_factorial(third - i))) {
      return false;
    }
    if (!(sign * pochhammer({1, 2}, i, mod) == facts.factorial(half) * facts.inverse_factorial(half - i))) {
      return false;
    }
    if (!(pochhammer({2 * p + 7, 6}, i, mod) == facts.factorial(sixth + i) * facts.inverse_factorial(sixth))) {
      return false;
    }
  }
  return true;
}

struct ExpectationReport {
  bool all_square = true;
  std::vector<Fp2> roots;
  std::size_t degree = 0;
  std::size_t deficit = 0;  // degree minus the number of roots found in F_{p^2}
};

/// Finds every root of G^((p-5)/6)(5/6, 2/3, (2p+7)/6; t) in F_{p^2} and
/// tests each for being a square there. Reports; never asserts.
inline ExpectationReport expectation_check(const PrimeModulus& mod, u64 bound = kDefaultRootSearchBound) {
  detail::require_five_mod_six(mod);
  if (mod.p() < 17) {
    throw DomainError("the c2 series has no admissible roots below p = 17");
  }
  const UniPoly g2 = c2_series(mod).poly;
  ExpectationReport report;
  report.degree = *g2.degree();
  report.roots = roots_over(g2, 2, bound);
  for (const Fp2& z : report.roots) report.all_square = report.all_square && is_square_fp2(z);
  report.deficit = report.degree - report.roots.size();
  return report;
}

}  // namespace hwc
