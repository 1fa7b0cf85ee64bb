// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// The two genus-3 families with large cyclic automorphism group:
//
//   C_r : x^3 z + y^4 + r y^2 z^2 + z^4 = 0   (Aut = C6 for r != 0, +-2)
//   C   : x^3 y + y^3 z + z^4 = 0              (Aut = C9)
//
// For C_r the Hasse-Witt entries are polynomials in r. With z = 1,
// F^(p-1) = sum_i C(p-1, i) x^(3i) (y^4 + r y^2 + 1)^(p-1-i), so every entry
// is +-1 times the coefficient of a power of y in (y^4 + r y^2 + 1)^s.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hwc/ffield.hpp"
#include "hwc/hwcore.hpp"
#include "hwc/unipoly.hpp"

namespace hwc {

// --- Classification ---------------------------------------------------------

namespace newton_polygon {
inline constexpr const char* kOrdinary = "3(1,0)+3(0,1)";
inline constexpr const char* kOneSupersingular = "(1,0)+2(1,1)+(0,1)";
inline constexpr const char* kTwoOrdinary = "2(1,0)+(1,1)+2(0,1)";
inline constexpr const char* kSupersingular = "3(1,1)";
inline constexpr const char* kSlopeThirds = "(2,1)+(1,2)";
}  // namespace newton_polygon

using EoType = std::array<int, 3>;

inline std::string format_eo(const EoType& eo) {
  return "(" + std::to_string(eo[0]) + "," + std::to_string(eo[1]) + "," + std::to_string(eo[2]) +
         ")";
}

struct Classification {
  int a_number = 0;
  int p_rank = 0;
  std::string newton_polygon;
  EoType eo_type{};

  /// Ekedahl-Oort step condition, a = 3 - phi(3), and the p-rank read off phi.
  bool consistent() const {
    int prev = 0;
    for (int phi : eo_type) {
      if (phi < prev || phi > prev + 1) return false;
      prev = phi;
    }
    if (a_number != 3 - eo_type[2]) return false;
    int f = 0;
    while (f < 3 && eo_type[static_cast<std::size_t>(f)] == f + 1) ++f;
    return f == p_rank;
  }

  friend bool operator==(const Classification&, const Classification&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Classification& c) {
    return os << "a=" << c.a_number << " f=" << c.p_rank << " NP=" << c.newton_polygon
              << " EO=" << format_eo(c.eo_type);
  }
};

struct TableRow {
  int a_number;
  int p_rank;
  const char* newton_polygon;
  EoType eo_type;
};

/// C6 table keyed by (p mod 6, a-number); nullopt for combinations that
/// cannot occur.
inline std::optional<TableRow> c6_table(u64 p, int a_number) {
  switch (p % 6) {
    case 1:
      if (a_number == 0) return TableRow{0, 3, newton_polygon::kOrdinary, {1, 2, 3}};
      if (a_number == 2) return TableRow{2, 1, newton_polygon::kOneSupersingular, {1, 1, 1}};
      return std::nullopt;
    case 5:
      if (a_number == 1) return TableRow{1, 2, newton_polygon::kTwoOrdinary, {1, 2, 2}};
      if (a_number == 3) return TableRow{3, 0, newton_polygon::kSupersingular, {0, 0, 0}};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

/// C9 table keyed by p mod 9.
inline TableRow c9_table(u64 p) {
  switch (p % 9) {
    case 1:
      return {0, 3, newton_polygon::kOrdinary, {1, 2, 3}};
    case 2:
    case 5:
      return {1, 0, newton_polygon::kSupersingular, {0, 1, 2}};
    case 4:
    case 7:
      return {2, 0, newton_polygon::kSlopeThirds, {0, 1, 1}};
    case 8:
      return {3, 0, newton_polygon::kSupersingular, {0, 0, 0}};
    default:
      throw DomainError("p = " + std::to_string(p) + " is divisible by 3");
  }
}

// --- C6 family --------------------------------------------------------------

/// Coefficient of y^m in (y^4 + r y^2 + 1)^s as a polynomial in r.
inline UniPoly coeff_of_power(i64 s, i64 m, const FactorialTable& facts) {
  const PrimeModulus& mod = facts.modulus();
  if (s < 0 || static_cast<u64>(s) >= mod.p()) {
    throw DomainError("exponent s = " + std::to_string(s) + " outside [0, p-1]");
  }
  if (m < 0) throw DomainError("negative y-degree");
  std::vector<u64> coeffs;
  if (m % 2 != 0) return UniPoly(mod);
  // 4a + 2b = m  =>  b = (m - 4a) / 2
  for (i64 a = 0; 4 * a <= m; ++a) {
    const i64 b = (m - 4 * a) / 2;
    if (a + b > s) continue;
    const std::array<i64, 3> parts{a, b, s - a - b};
    if (coeffs.size() <= static_cast<std::size_t>(b)) coeffs.resize(static_cast<std::size_t>(b) + 1, 0);
    coeffs[static_cast<std::size_t>(b)] = facts.multinomial(s, parts).value();
  }
  return UniPoly(std::move(coeffs), mod);
}

inline UniPoly coeff_of_power(i64 s, i64 m, const PrimeModulus& mod) {
  return coeff_of_power(s, m, FactorialTable(mod));
}

/// Entry polynomials of the C_r Hasse-Witt matrix.
///
/// For p = 5 mod 6 the matrix is anti-diagonal with (1,3) = c1, (3,1) = c2.
/// For p = 1 mod 6 it is diag(ct1, ct2, ct3). The d-forms are the raw
/// y-coefficients before the +-1 binomial scalar is divided out.
struct C6CoeffPolys {
  PrimeModulus mod;
  std::optional<UniPoly> c1, c2, d1, d2;
  std::optional<UniPoly> ct1, ct2, ct3, dt1, dt2, dt3;

  bool antidiagonal() const noexcept { return mod.p() % 6 == 5; }
};

inline C6CoeffPolys c6_coeff_polys(const FactorialTable& facts) {
  const PrimeModulus& mod = facts.modulus();
  const i64 p = static_cast<i64>(mod.p());
  C6CoeffPolys out{mod, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  if (p % 6 == 5) {
    out.d1 = coeff_of_power((2 * p - 1) / 3, p - 1, facts);
    out.d2 = coeff_of_power((p - 2) / 3, p - 1, facts);
    // x^(p-2) needs i = (p-2)/3 copies of x^3 z; x^(2p-1) needs (2p-1)/3.
    out.c1 = facts.binomial(p - 1, (p - 2) / 3).inverse() * *out.d1;
    out.c2 = facts.binomial(p - 1, (2 * p - 1) / 3).inverse() * *out.d2;
  } else {
    out.dt1 = coeff_of_power((p - 1) / 3, p - 1, facts);
    out.dt2 = coeff_of_power((2 * p - 2) / 3, 2 * p - 2, facts);
    out.dt3 = coeff_of_power((2 * p - 2) / 3, p - 1, facts);
    out.ct1 = facts.binomial(p - 1, (2 * p - 2) / 3).inverse() * *out.dt1;
    out.ct2 = facts.binomial(p - 1, (p - 1) / 3).inverse() * *out.dt2;
    out.ct3 = facts.binomial(p - 1, (p - 1) / 3).inverse() * *out.dt3;
  }
  return out;
}

inline C6CoeffPolys c6_coeff_polys(const PrimeModulus& mod) {
  return c6_coeff_polys(FactorialTable(mod));
}

template <class Field>
bool c6_nonsingular(const Field& r) {
  const Field two = lift<Field>(Fp(2, r.modulus()));
  return !(r == two) && !(r == -two);
}

/// The form x^3 z + y^4 + r y^2 z^2 + z^4.
template <class Field>
QuarticForm<Field> c6_form(const Field& r) {
  const PrimeModulus& mod = r.modulus();
  QuarticForm<Field> f(mod);
  const Field one = lift<Field>(Fp::one(mod));
  f.add_term({3, 0, 1}, one).add_term({0, 4, 0}, one).add_term({0, 2, 2}, r).add_term({0, 0, 4}, one);
  return f;
}

/// The form x^3 y + y^3 z + z^4.
inline QuarticForm<Fp> c9_form(const PrimeModulus& mod) {
  QuarticForm<Fp> f(mod);
  f.add_term(3, 1, 0, 1).add_term(0, 3, 1, 1).add_term(0, 0, 4, 1);
  return f;
}

/// Closed-form Hasse-Witt matrix of C_r at r (in F_p or F_{p^2}).
template <class Field>
HWMatrix<Field> c6_hw(const C6CoeffPolys& polys, const Field& r) {
  require_same(polys.mod, r.modulus());
  if (!c6_nonsingular(r)) throw DomainError("C_r is singular for r = +-2");
  HWMatrix<Field> h(polys.mod);
  if (polys.antidiagonal()) {
    h.at(0, 2) = (*polys.c1)(r);
    h.at(2, 0) = (*polys.c2)(r);
  } else {
    h.at(0, 0) = (*polys.ct1)(r);
    h.at(1, 1) = (*polys.ct2)(r);
    h.at(2, 2) = (*polys.ct3)(r);
  }
  return h;
}

template <class Field>
HWMatrix<Field> c6_hw(const PrimeModulus& mod, const Field& r) {
  return c6_hw(c6_coeff_polys(mod), r);
}

template <class Field>
Classification c6_classify(const C6CoeffPolys& polys, const Field& r) {
  if (r.is_zero()) throw DomainError("r = 0 gives automorphism group larger than C6");
  const HWMatrix<Field> h = c6_hw(polys, r);
  const int a = a_number(h);
  const auto row = c6_table(polys.mod.p(), a);
  if (!row) {
    throw IntegrityError("a-number " + std::to_string(a) + " is impossible for p = " +
                         std::to_string(polys.mod.p()) + " in the C6 family");
  }
  return {a, stable_rank(h), row->newton_polygon, row->eo_type};
}

template <class Field>
Classification c6_classify(const PrimeModulus& mod, const Field& r) {
  return c6_classify(c6_coeff_polys(mod), r);
}

/// C_r and C_r' are isomorphic over the algebraic closure iff r^2 = r'^2.
template <class Field>
bool c6_isomorphic(const Field& r, const Field& r2) {
  if (!c6_nonsingular(r) || !c6_nonsingular(r2)) throw DomainError("C_r is singular for r = +-2");
  return r * r == r2 * r2;
}

/// Breakdown behind c6_count_max_a.
struct C6CountDetail {
  std::size_t degree = 0;    // degree of the polynomial whose roots give max a
  bool zero_is_root = false;
  int roots_at_pm2 = 0;
  int count = 0;
};

/// Isomorphism classes of C_r (r != 0, +-2, over the algebraic closure)
/// with the largest possible a-number: 3 for p = 5 mod 6, 2 for p = 1 mod 6.
///
/// Those r are the roots of c2 (resp. ct1). The polynomial is separable, so
/// its distinct roots number exactly its degree; discard r = 0 and r = +-2
/// and pair r with -r.
inline C6CountDetail c6_count_detail(const C6CoeffPolys& polys) {
  const UniPoly& poly = polys.antidiagonal() ? *polys.c2 : *polys.ct1;
  const PrimeModulus& mod = polys.mod;
  if (poly.is_zero()) throw IntegrityError("max-a polynomial vanishes identically");
  if (!is_separable(poly)) {
    throw IntegrityError("max-a polynomial is not separable for p = " + std::to_string(mod.p()));
  }
  C6CountDetail d;
  d.degree = *poly.degree();
  d.zero_is_root = poly(Fp::zero(mod)).is_zero();
  d.roots_at_pm2 = static_cast<int>(poly(Fp(2, mod)).is_zero()) + static_cast<int>(poly(Fp(-2, mod)).is_zero());
  const std::size_t usable = d.degree - static_cast<std::size_t>(d.zero_is_root) -
                             static_cast<std::size_t>(d.roots_at_pm2);
  if (usable % 2 != 0) {
    throw IntegrityError("nonzero roots do not pair up as +-r for p = " + std::to_string(mod.p()));
  }
  d.count = static_cast<int>(usable / 2);
  return d;
}

inline int c6_count_max_a(const PrimeModulus& mod) { return c6_count_detail(c6_coeff_polys(mod)).count; }

// --- C9 curve ---------------------------------------------------------------

/// Exponents (a, b, c) of (x^3 y)^a (y^3 z)^b (z^4)^c landing on the entry
/// (row, col), obtained by solving 3a = i, a + 3b = j, b + 4c = k; nullopt
/// when the solution is not a nonnegative integer vector.
inline std::optional<std::array<i64, 3>> c9_slot_exponents(u64 p, std::size_t row, std::size_t col) {
  const Exponent e = hw_slot(p, row, col);
  const i64 i = e[0], j = e[1], k = e[2];
  const i64 n = static_cast<i64>(p) - 1;
  const i64 b9 = k + 4 * j - 4 * n;
  const i64 c9 = n + 2 * k - j;
  if (i % 3 != 0 || b9 % 9 != 0 || c9 % 9 != 0) return std::nullopt;
  const std::array<i64, 3> abc{i / 3, b9 / 9, c9 / 9};
  for (i64 v : abc) {
    if (v < 0 || v > n) return std::nullopt;
  }
  return abc;
}

/// The same exponents from the closed-form table, one row per entry; each
/// part is (u*p + v)/w. nullopt when some part is not integral.
inline std::optional<std::array<i64, 3>> c9_slot_exponents_table(u64 p, std::size_t row, std::size_t col) {
  struct Part {
    i64 u, v, w;
  };
  using Row = std::array<Part, 3>;
  // Indexed [row][col]. Rows of the table are listed by target exponent.
  static const std::array<std::array<Row, 3>, 3> kTable{{
      {{
          Row{{{2, -2, 3}, {1, -1, 9}, {2, -2, 9}}},    // (2p-2, p-1, p-1)
          Row{{{1, -2, 3}, {5, -1, 9}, {1, -2, 9}}},    // (p-2, 2p-1, p-1)
          Row{{{1, -2, 3}, {2, -1, 9}, {4, -2, 9}}},    // (p-2, p-1, 2p-1)
      }},
      {{
          Row{{{2, -1, 3}, {1, -5, 9}, {2, -1, 9}}},    // (2p-1, p-2, p-1)
          Row{{{1, -1, 3}, {5, -5, 9}, {1, -1, 9}}},    // (p-1, 2p-2, p-1)
          Row{{{4, -1, 9}, {2, -5, 9}, {1, -1, 3}}},    // (p-1, p-2, 2p-1)
      }},
      {{
          Row{{{2, -1, 3}, {1, -2, 9}, {2, -4, 9}}},    // (2p-1, p-1, p-2)
          Row{{{1, -1, 3}, {5, -2, 9}, {1, -4, 9}}},    // (p-1, 2p-1, p-2)
          Row{{{1, -1, 3}, {2, -2, 9}, {4, -4, 9}}},    // (p-1, p-1, 2p-2)
      }},
  }};
  const i64 pp = static_cast<i64>(p);
  std::array<i64, 3> abc{};
  for (std::size_t t = 0; t < 3; ++t) {
    const Part& part = kTable[row][col][t];
    const i64 num = part.u * pp + part.v;
    if (num % part.w != 0) return std::nullopt;
    abc[t] = num / part.w;
    if (abc[t] < 0 || abc[t] > pp - 1) return std::nullopt;
  }
  return abc;
}

/// Closed-form Hasse-Witt matrix of the C9 curve: entry = multinomial
/// C(p-1; a, b, c) on admissible slots, 0 elsewhere.
inline HWMatrix<Fp> c9_hw(const FactorialTable& facts) {
  const PrimeModulus& mod = facts.modulus();
  const u64 p = mod.p();
  HWMatrix<Fp> h(mod);
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 3; ++col) {
      auto solved = c9_slot_exponents(p, row, col);
      auto listed = c9_slot_exponents_table(p, row, col);
      if (solved && listed) {
        std::array<i64, 3> a = *solved;
        std::array<i64, 3> b = *listed;
        // The multinomial is symmetric in its parts; compare as multisets.
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
          throw IntegrityError("C9 exponent table disagrees with the linear solve at p = " +
                               std::to_string(p));
        }
      } else if (solved.has_value() != listed.has_value()) {
        throw IntegrityError("C9 slot admissibility disagrees with the exponent table at p = " +
                             std::to_string(p));
      }
      if (solved) h.at(row, col) = facts.multinomial(static_cast<i64>(p) - 1, *solved);
    }
  }
  return h;
}

inline HWMatrix<Fp> c9_hw(const PrimeModulus& mod) { return c9_hw(FactorialTable(mod)); }

/// a-number and p-rank from the matrix; Newton polygon and EO type from the
/// p mod 9 table.
inline Classification c9_classify(const FactorialTable& facts) {
  const HWMatrix<Fp> h = c9_hw(facts);
  const TableRow row = c9_table(facts.modulus().p());
  return {a_number(h), stable_rank(h), row.newton_polygon, row.eo_type};
}

inline Classification c9_classify(const PrimeModulus& mod) { return c9_classify(FactorialTable(mod)); }

}  // namespace hwc
