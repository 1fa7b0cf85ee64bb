// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hwc/ffield.hpp"
#include "hwc/hwcore.hpp"

namespace hwc {

/// Default largest p for exhaustive F_{p^2} point counts (~p^4 evaluations).
inline constexpr u64 kDefaultPointCountBound = 60;

namespace detail {

/// Coefficient of a form as an F_{p^2} element.
inline Fp2 as_fp2(const Fp& c) { return Fp2(c); }
inline Fp2 as_fp2(const Fp2& c) { return c; }

}  // namespace detail

/// Number of projective F_{p^2}-points on F = 0.
///
/// Charts: z = 1 (all (x, y)), then z = 0, y = 1 (all x), then (1:0:0).
/// Each projective point is visited exactly once.
template <class Field>
u64 count_points_ext2(const QuarticForm<Field>& form, u64 bound = kDefaultPointCountBound) {
  const PrimeModulus& mod = form.modulus();
  if (mod.p() > bound) {
    throw CapacityError("F_{p^2} point count limited to p <= " + std::to_string(bound) +
                        ", got p = " + std::to_string(mod.p()));
  }
  std::vector<Fp2> field;
  field.reserve(mod.p() * mod.p());
  for_each_fp2(mod, [&](const Fp2& x) { field.push_back(x); });

  // powers[e][n] = field[n]^e for e = 0..4
  std::array<std::vector<Fp2>, 5> powers;
  for (std::size_t e = 0; e <= 4; ++e) {
    powers[e].reserve(field.size());
    for (const Fp2& x : field) powers[e].push_back(x.pow(e));
  }

  struct Term {
    Fp2 coeff;
    Exponent e;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : form.terms()) terms.push_back({detail::as_fp2(c), e});

  u64 count = 0;
  std::vector<Fp2> x_part(terms.size(), Fp2::zero(mod));
  for (std::size_t xi = 0; xi < field.size(); ++xi) {
    for (std::size_t t = 0; t < terms.size(); ++t) x_part[t] = terms[t].coeff * powers[terms[t].e[0]][xi];
    for (std::size_t yi = 0; yi < field.size(); ++yi) {
      Fp2 acc = Fp2::zero(mod);
      for (std::size_t t = 0; t < terms.size(); ++t) acc += x_part[t] * powers[terms[t].e[1]][yi];
      if (acc.is_zero()) ++count;
    }
  }
  const Fp2 zero = Fp2::zero(mod);
  const Fp2 one = Fp2::one(mod);
  for (const Fp2& x : field) {
    if (form(x, one, zero).is_zero()) ++count;
  }
  if (form(one, zero, zero).is_zero()) ++count;
  return count;
}

/// Hasse-Weil upper bound p^2 + 1 + 2*g*p for g = 3.
inline u64 hasse_weil_upper(u64 p) { return p * p + 1 + 6 * p; }
inline u64 hasse_weil_lower(u64 p) { return p * p + 1 - 6 * p; }

/// |#C(F_{p^2}) - (p^2 + 1)| <= 6p.
inline bool within_hasse_weil(u64 p, u64 count) {
  return count <= hasse_weil_upper(p) && count + 6 * p >= p * p + 1;
}

template <class Field>
bool is_maximal_ext2(const QuarticForm<Field>& form, u64 bound = kDefaultPointCountBound) {
  return count_points_ext2(form, bound) == hasse_weil_upper(form.modulus().p());
}

}  // namespace hwc
