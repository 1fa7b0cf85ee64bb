// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// `acceptance N` runs criterion N alone. Every check is exact.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iterator>
#include <set>
#include <string>

#include "hwc/families.hpp"
#include "hwc/harness/corpus.hpp"
#include "hwc/harness/points.hpp"
#include "hwc/hwcore.hpp"
#include "hwc/hypergeom.hpp"

namespace {

using namespace hwc;

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    detail = "first failure: " + what;
  }
};

Outcome oracle_equivalence() {
  Outcome out;
  std::size_t forms = 0;
  for (u64 p : {5u, 7u, 11u, 13u}) {
    const PrimeModulus mod(p);
    const FactorialTable facts(mod);
    for (const CorpusEntry& e : oracle_corpus(mod)) {
      out.expect(hw_matrix(e.form, facts) == hw_matrix_oracle(e.form), "p=" + std::to_string(p) + " " + e.label);
      ++forms;
    }
  }
  if (out.ok) out.detail = std::to_string(forms) + " forms";
  return out;
}

Outcome closed_form_spot_checks() {
  Outcome out;
  const PrimeModulus m5(5);
  out.expect(*c6_coeff_polys(m5).c2 == UniPoly({-1}, m5), "c2 at p=5");
  const PrimeModulus m11(11);
  out.expect(*c6_coeff_polys(m11).c2 == UniPoly({0, -3}, m11), "c2 at p=11");
  out.expect(c9_hw(PrimeModulus(17)).is_zero(), "C9 at p=17");
  out.expect(hw_matrix(c9_form(PrimeModulus(17))).is_zero(), "C9 at p=17 (direct)");
  const HWMatrix<Fp> h13 = hw_matrix(c9_form(PrimeModulus(13)));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      out.expect(h13.at(r, c).is_zero() != (r == 2 && c == 1), "C9 at p=13 entry " + std::to_string(r + 1) + std::to_string(c + 1));
    }
  }
  out.expect(c9_hw(PrimeModulus(13)) == h13, "C9 closed form at p=13");
  return out;
}

Outcome structure_lemmas() {
  Outcome out;
  for (u64 p : primes_in(5, 500)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const bool anti = p % 6 == 5;
    std::set<int> attained;
    for (u64 rv = 0; rv < p; ++rv) {
      const Fp r = Fp::from_u64(rv, mod);
      if (!c6_nonsingular(r)) continue;
      const HWMatrix<Fp> h = c6_hw(polys, r);
      const bool shape = anti ? h.is_antidiagonal() && h.at(1, 1).is_zero() : h.is_diagonal();
      out.expect(shape, "shape at p=" + std::to_string(p) + " r=" + std::to_string(rv));
      attained.insert(a_number(h));
    }
    out.expect(attained.count(anti ? 2 : 1) == 0, "forbidden a-number at p=" + std::to_string(p));
  }
  return out;
}

Outcome counting_theorem() {
  Outcome out;
  for (u64 p : primes_in(5, 1000)) {
    const u64 n = static_cast<u64>(c6_count_max_a(PrimeModulus(p)));
    out.expect(n == p / 12, "floor(p/12) at p=" + std::to_string(p));
    out.expect(n == (p % 6 == 5 ? (p - 5) / 12 : (p - 1) / 12), "residue formula at p=" + std::to_string(p));
  }
  return out;
}

Outcome c9_table_match() {
  Outcome out;
  for (u64 p : primes_in(5, 1000)) {
    const PrimeModulus mod(p);
    const HWMatrix<Fp> h = hw_matrix(c9_form(mod));
    const TableRow row = c9_table(p);
    const Classification c = c9_classify(mod);
    const std::string at = " at p=" + std::to_string(p);
    out.expect(a_number(h) == row.a_number, "a-number" + at);
    out.expect(stable_rank(h) == row.p_rank, "p-rank" + at);
    out.expect(c.a_number == row.a_number && c.p_rank == row.p_rank, "classification ranks" + at);
    out.expect(c.newton_polygon == row.newton_polygon && c.eo_type == row.eo_type, "NP/EO" + at);
  }
  return out;
}

Outcome divisibility_separability() {
  Outcome out;
  for (u64 p : primes_in(5, 500)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const std::string at = " at p=" + std::to_string(p);
    if (p % 6 == 5) {
      const UniPoly& c1 = *polys.c1;
      const UniPoly& c2 = *polys.c2;
      const Fp two(2, mod);
      out.expect(divides(c2, c1), "c2 | c1" + at);
      out.expect(is_separable(c2), "c2 separable" + at);
      out.expect(!c2(two).is_zero() && !c2(-two).is_zero(), "c2(+-2) != 0" + at);
      out.expect(c2.degree() == (p - 5) / 6, "deg c2" + at);
      out.expect(c1.degree() == (p - 1) / 2, "deg c1" + at);
      out.expect(c2(Fp::zero(mod)).is_zero() == (p % 12 == 11), "c2(0)" + at);
    } else {
      out.expect(divides(*polys.ct1, *polys.ct3), "ct1 | ct3" + at);
      out.expect(polys.ct1->degree() == (p - 1) / 6, "deg ct1" + at);
    }
  }
  return out;
}

Outcome hypergeometric_identities() {
  Outcome out;
  for (u64 p : primes_in(5, 100)) {
    if (p % 6 != 5) continue;
    const PrimeModulus mod(p);
    out.expect(verify_euler(mod), "Euler at p=" + std::to_string(p));
    out.expect(verify_gauss_lemma(mod), "Gauss lemma at p=" + std::to_string(p));
  }
  for (u64 p : {11u, 17u, 23u, 29u}) {
    out.expect(verify_pochhammer_congruences(PrimeModulus(p)), "Pochhammer at p=" + std::to_string(p));
  }
  return out;
}

Outcome expectation() {
  Outcome out;
  std::size_t primes = 0;
  std::size_t deficit = 0;
  for (u64 p : primes_in(17, 500)) {
    if (p % 6 != 5) continue;
    const ExpectationReport rep = expectation_check(PrimeModulus(p));
    out.expect(rep.all_square, "non-square root at p=" + std::to_string(p));
    deficit += rep.deficit;
    ++primes;
  }
  if (out.ok) out.detail = std::to_string(primes) + " primes, total root deficit " + std::to_string(deficit);
  return out;
}

Outcome maximality() {
  Outcome out;
  const QuarticForm<Fp> c17 = c9_form(PrimeModulus(17));
  out.expect(count_points_ext2(c17) == 392, "392 points at p=17");
  out.expect(is_maximal_ext2(c17), "maximal at p=17");
  for (u64 p : {5u, 7u, 13u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
    out.expect(!is_maximal_ext2(c9_form(PrimeModulus(p))), "not maximal at p=" + std::to_string(p));
  }
  return out;
}

Outcome p_rank_consistency() {
  Outcome out;
  for (u64 p : primes_in(5, 500)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    for (u64 rv = 1; rv < p; ++rv) {
      const Fp r = Fp::from_u64(rv, mod);
      if (!c6_nonsingular(r)) continue;
      const HWMatrix<Fp> h = c6_hw(polys, r);
      const auto row = c6_table(p, a_number(h));
      const std::string at = " at p=" + std::to_string(p) + " r=" + std::to_string(rv);
      out.expect(row.has_value(), "a-number missing from table" + at);
      if (row) out.expect(stable_rank(h) == row->p_rank, "p-rank" + at);
    }
  }
  for (u64 p : primes_in(5, 1000)) {
    out.expect(elliptic_e0_supersingular(PrimeModulus(p)) == (p % 6 == 5), "E0 at p=" + std::to_string(p));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"closed-form spot checks", closed_form_spot_checks},
      {"structure lemmas", structure_lemmas},
      {"counting theorem", counting_theorem},
      {"C9 table", c9_table_match},
      {"divisibility and separability", divisibility_separability},
      {"hypergeometric identities", hypergeometric_identities},
      {"expectation re-verification", expectation},
      {"maximality", maximality},
      {"p-rank consistency", p_rank_consistency},
  };
  const int total = static_cast<int>(std::size(criteria));
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > total) {
      std::fprintf(stderr, "usage: %s [1..%d]\n", argv[0], total);
      return 2;
    }
  }
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    if (++index != only && only != 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%s%s%.2fs)\n", o.ok ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                o.detail.empty() ? "" : ", ", secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
