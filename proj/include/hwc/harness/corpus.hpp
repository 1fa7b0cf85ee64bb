// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "hwc/families.hpp"
#include "hwc/ffield.hpp"
#include "hwc/hwcore.hpp"

namespace hwc {

/// All 15 exponent vectors of total degree 4, lexicographically decreasing.
inline std::array<Exponent, 15> quartic_monomials() {
  std::array<Exponent, 15> out{};
  std::size_t n = 0;
  for (unsigned i = 5; i-- > 0;) {
    for (unsigned j = 5 - i; j-- > 0;) out[n++] = {i, j, 4 - i - j};
  }
  return out;
}

/// x^4 + y^4 + z^4.
inline QuarticForm<Fp> fermat_form(const PrimeModulus& mod) {
  QuarticForm<Fp> f(mod);
  f.add_term(4, 0, 0, 1).add_term(0, 4, 0, 1).add_term(0, 0, 4, 1);
  return f;
}

inline constexpr std::size_t kRandomCorpusSize = 50;

struct CorpusEntry {
  std::string label;
  QuarticForm<Fp> form;
};

/// `count` quartics with 2..6 distinct monomials and nonzero coefficients.
/// Deterministic in (p, seed).
inline std::vector<QuarticForm<Fp>> random_sparse_quartics(const PrimeModulus& mod, std::size_t count = kRandomCorpusSize,
                                                           u64 seed = 0) {
  std::mt19937_64 rng(mod.p() * 0x9E3779B97F4A7C15ULL + seed);
  auto monomials = quartic_monomials();
  std::uniform_int_distribution<std::size_t> size_dist(2, 6);
  std::uniform_int_distribution<u64> coeff_dist(1, mod.p() - 1);
  std::vector<QuarticForm<Fp>> out;
  out.reserve(count);
  while (out.size() < count) {
    std::shuffle(monomials.begin(), monomials.end(), rng);
    QuarticForm<Fp> f(mod);
    const std::size_t k = size_dist(rng);
    for (std::size_t t = 0; t < k; ++t) f.add_term(monomials[t], Fp::from_u64(coeff_dist(rng), mod));
    out.push_back(std::move(f));
  }
  return out;
}

/// Every C_r with r in F_p \ {+-2}, the C9 form, the Fermat quartic, and the
/// random sparse quartics.
inline std::vector<CorpusEntry> oracle_corpus(const PrimeModulus& mod) {
  std::vector<CorpusEntry> out;
  for (u64 r = 0; r < mod.p(); ++r) {
    const Fp rv = Fp::from_u64(r, mod);
    if (c6_nonsingular(rv)) out.push_back({"c6:r=" + std::to_string(r), c6_form(rv)});
  }
  out.push_back({"c9", c9_form(mod)});
  out.push_back({"fermat", fermat_form(mod)});
  std::size_t n = 0;
  for (auto& f : random_sparse_quartics(mod)) out.push_back({"random:" + std::to_string(n++), std::move(f)});
  return out;
}

}  // namespace hwc
