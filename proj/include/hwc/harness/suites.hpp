// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Prime-sweep drivers. Each suite maps one prime to a handful of report
// rows; a range sweep runs the primes (optionally on a small thread pool)
// and concatenates rows in prime order.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hwc/errors.hpp"
#include "hwc/families.hpp"
#include "hwc/ffield.hpp"
#include "hwc/harness/corpus.hpp"
#include "hwc/harness/points.hpp"
#include "hwc/harness/report.hpp"
#include "hwc/hwcore.hpp"
#include "hwc/hypergeom.hpp"
#include "hwc/unipoly.hpp"

namespace hwc {

enum class Suite { Oracle, C6Structure, Counts, C9Table, Euler, GaussLemma, Expectation, Maximality };

inline constexpr std::array<std::pair<Suite, const char*>, 8> kSuiteNames{{
    {Suite::Oracle, "oracle"},
    {Suite::C6Structure, "c6-structure"},
    {Suite::Counts, "counts"},
    {Suite::C9Table, "c9-table"},
    {Suite::Euler, "euler"},
    {Suite::GaussLemma, "gauss-lemma"},
    {Suite::Expectation, "expectation"},
    {Suite::Maximality, "maximality"},
}};

inline const char* to_string(Suite s) {
  for (const auto& [suite, name] : kSuiteNames) {
    if (suite == s) return name;
  }
  return "?";
}

inline Suite parse_suite(std::string_view name) {
  for (const auto& [suite, name_] : kSuiteNames) {
    if (name == name_) return suite;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

struct SuiteOptions {
  /// A single explicitly requested prime: wrong residue classes are errors
  /// instead of SKIPPED rows.
  bool explicit_prime = false;
  /// Also scan r over the roots of c2 in F_{p^2} in the maximality suite.
  bool ext2 = false;
  /// Disable the Hasse-Witt = 0 prefilter in the maximality scans.
  bool exhaustive = false;
  u64 point_bound = kDefaultPointCountBound;
  u64 root_bound = kDefaultRootSearchBound;
  u64 c6_oracle_bound = 200;  // c6-structure compares against hw_matrix up to here
  unsigned workers = 1;
};

/// Primes in [lo, hi] that are at least 5.
inline std::vector<u64> sweep_primes(u64 lo, u64 hi) {
  if (lo > hi) throw DomainError("empty prime range " + std::to_string(lo) + ".." + std::to_string(hi));
  return primes_in(std::max<u64>(lo, 5), hi);
}

namespace detail {

inline ReportRow row(u64 p, std::string family, std::string param) {
  ReportRow r;
  r.p = p;
  r.family = std::move(family);
  r.param = std::move(param);
  return r;
}

inline void classify_into(ReportRow& r, const Classification& c) {
  r.a_number = c.a_number;
  r.p_rank = c.p_rank;
  r.newton_polygon = c.newton_polygon;
  r.eo_type = format_eo(c.eo_type);
}

inline void check(ReportRow& r, bool ok, const std::string& what) {
  if (ok) return;
  r.status = Status::Fail;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += what;
}

inline void note(ReportRow& r, const std::string& what) {
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += what;
}

/// Either a SKIPPED row or, for an explicit prime, a DomainError.
inline std::vector<ReportRow> skip(u64 p, const char* family, const std::string& why, const SuiteOptions& opt) {
  if (opt.explicit_prime) throw DomainError(why);
  ReportRow r = row(p, family, "-");
  r.status = Status::Skipped;
  r.detail = why;
  return {r};
}

template <class T>
std::string show(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// --- oracle -----------------------------------------------------------------

inline std::vector<ReportRow> oracle_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  if (p > kOracleMaxPrime) {
    return skip(p, "oracle", "dense oracle limited to p <= " + std::to_string(kOracleMaxPrime), opt);
  }
  const FactorialTable facts(mod);
  struct Group {
    const char* family;
    std::size_t forms = 0;
    std::vector<std::string> mismatches;
  };
  std::array<Group, 4> groups{{{"c6", 0, {}}, {"c9", 0, {}}, {"fermat", 0, {}}, {"random", 0, {}}}};
  for (const CorpusEntry& e : oracle_corpus(mod)) {
    const std::string_view label = e.label;
    Group& g = label.starts_with("c6") ? groups[0]
               : label == "c9"         ? groups[1]
               : label == "fermat"     ? groups[2]
                                       : groups[3];
    ++g.forms;
    if (!(hw_matrix(e.form, facts) == hw_matrix_oracle(e.form))) g.mismatches.push_back(e.label);
  }
  std::vector<ReportRow> out;
  for (const Group& g : groups) {
    ReportRow r = row(p, g.family, std::to_string(g.forms) + " forms");
    note(r, "hw_matrix vs oracle");
    for (const auto& m : g.mismatches) check(r, false, "mismatch " + m);
    out.push_back(std::move(r));
  }
  return out;
}

// --- c6-structure -----------------------------------------------------------

inline std::vector<ReportRow> c6_structure_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  const FactorialTable facts(mod);
  const C6CoeffPolys polys = c6_coeff_polys(facts);
  const bool anti = polys.antidiagonal();
  const int forbidden_a = anti ? 2 : 1;

  ReportRow shape = row(p, "c6", "shape");
  note(shape, anti ? "anti-diagonal, (2,2) = 0" : "diagonal");
  std::set<int> attained;
  std::array<std::size_t, 4> per_a{};
  std::array<bool, 4> rank_ok{true, true, true, true};
  const bool compare = p <= opt.c6_oracle_bound;
  for (u64 rv = 0; rv < p; ++rv) {
    const Fp r = Fp::from_u64(rv, mod);
    if (!c6_nonsingular(r)) continue;
    const HWMatrix<Fp> h = c6_hw(polys, r);
    if (anti) {
      check(shape, h.is_antidiagonal() && h.at(1, 1).is_zero(), "not anti-diagonal at r=" + std::to_string(rv));
    } else {
      check(shape, h.is_diagonal(), "not diagonal at r=" + std::to_string(rv));
    }
    if (compare) {
      check(shape, h == hw_matrix(c6_form(r), facts), "closed form differs from hw_matrix at r=" + std::to_string(rv));
    }
    if (rv == 0) continue;
    const int a = a_number(h);
    attained.insert(a);
    ++per_a[static_cast<std::size_t>(a)];
    const auto table = c6_table(p, a);
    if (!table || stable_rank(h) != table->p_rank) rank_ok[static_cast<std::size_t>(a)] = false;
  }
  if (compare) note(shape, "matches hw_matrix");

  std::vector<ReportRow> out{shape};
  for (int a : attained) {
    ReportRow r = row(p, "c6", "a=" + std::to_string(a));
    r.a_number = a;
    check(r, a != forbidden_a, "a-number " + std::to_string(forbidden_a) + " is excluded");
    if (const auto table = c6_table(p, a)) {
      r.p_rank = table->p_rank;
      r.newton_polygon = table->newton_polygon;
      r.eo_type = format_eo(table->eo_type);
    }
    note(r, std::to_string(per_a[static_cast<std::size_t>(a)]) + " values of r");
    check(r, rank_ok[static_cast<std::size_t>(a)], "stable rank differs from table p-rank");
    out.push_back(std::move(r));
  }

  ReportRow e0 = row(p, "e0", "y^2=x^3+1");
  const bool ss = elliptic_e0_supersingular(mod);
  note(e0, ss ? "supersingular" : "ordinary");
  check(e0, ss == (p % 6 == 5), "supersingularity disagrees with p mod 6");
  out.push_back(std::move(e0));
  return out;
}

// --- counts -----------------------------------------------------------------

inline std::vector<ReportRow> counts_rows(const PrimeModulus& mod, const SuiteOptions&) {
  const u64 p = mod.p();
  const C6CountDetail d = c6_count_detail(c6_coeff_polys(mod));
  const u64 by_class = p % 6 == 5 ? (p - 5) / 12 : (p - 1) / 12;
  ReportRow r = row(p, "c6", "max-a");
  r.a_number = p % 6 == 5 ? 3 : 2;
  note(r, "count=" + std::to_string(d.count) + " floor(p/12)=" + std::to_string(p / 12));
  check(r, static_cast<u64>(d.count) == p / 12, "count != floor(p/12)");
  check(r, static_cast<u64>(d.count) == by_class, "count != residue-class formula " + std::to_string(by_class));
  return {r};
}

// --- c9-table ---------------------------------------------------------------

inline std::vector<ReportRow> c9_table_rows(const PrimeModulus& mod, const SuiteOptions&) {
  const u64 p = mod.p();
  const FactorialTable facts(mod);
  const HWMatrix<Fp> h = c9_hw(facts);
  const Classification c = c9_classify(facts);
  const TableRow t = c9_table(p);
  ReportRow r = row(p, "c9", "p mod 9 = " + std::to_string(p % 9));
  classify_into(r, c);
  check(r, h == hw_matrix(c9_form(mod), facts), "closed form differs from hw_matrix");
  check(r, c.a_number == t.a_number, "a-number differs from table " + std::to_string(t.a_number));
  check(r, c.p_rank == t.p_rank, "p-rank differs from table " + std::to_string(t.p_rank));
  check(r, c.consistent(), "EO type inconsistent with a-number / p-rank");
  return {r};
}

// --- hypergeometric ---------------------------------------------------------

inline std::vector<ReportRow> euler_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  if (p % 6 != 5) return skip(p, "c6", "p = " + std::to_string(p) + " is not 5 mod 6", opt);
  ReportRow r = row(p, "c6", "euler");
  check(r, verify_euler(mod), "Euler transformation fails");
  return {r};
}

inline std::vector<ReportRow> gauss_lemma_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  if (p % 6 != 5) return skip(p, "c6", "p = " + std::to_string(p) + " is not 5 mod 6", opt);
  ReportRow r = row(p, "c6", "gauss-lemma");
  check(r, verify_gauss_lemma(mod), "series / symmetric sum / d-polynomial disagree");
  check(r, verify_pochhammer_congruences(mod), "Pochhammer congruence fails");
  return {r};
}

inline std::vector<ReportRow> expectation_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  if (p % 6 != 5) return skip(p, "c6", "p = " + std::to_string(p) + " is not 5 mod 6", opt);
  if (p < 17) return skip(p, "c6", "no admissible roots below p = 17", opt);
  const ExpectationReport e = expectation_check(mod, opt.root_bound);
  ReportRow r = row(p, "c6", "roots of c2 series");
  note(r, "degree=" + std::to_string(e.degree) + " roots_in_Fp2=" + std::to_string(e.roots.size()) +
              " deficit=" + std::to_string(e.deficit));
  check(r, e.all_square, "a root is not a square in F_{p^2}");
  return {r};
}

// --- maximality -------------------------------------------------------------

/// Scans candidate r values: maximal curves have vanishing Hasse-Witt
/// matrix, so unless `exhaustive` only r with c6_hw(r) = 0 are counted.
template <class Field>
std::vector<std::string> maximal_c6(const C6CoeffPolys& polys, const std::vector<Field>& candidates,
                                    const SuiteOptions& opt, std::size_t& counted, std::string& hw_violation) {
  const u64 p = polys.mod.p();
  std::vector<std::string> maximal;
  for (const Field& r : candidates) {
    if (!c6_nonsingular(r)) continue;
    const bool hw_zero = c6_hw(polys, r).is_zero();
    if (!hw_zero && !opt.exhaustive) continue;
    ++counted;
    const u64 n = count_points_ext2(c6_form(r), opt.point_bound);
    if (!within_hasse_weil(p, n)) hw_violation = show(r);
    if (n == hasse_weil_upper(p)) maximal.push_back(show(r));
  }
  return maximal;
}

inline std::string joined(const std::vector<std::string>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out + "}";
}

inline std::vector<ReportRow> maximality_rows(const PrimeModulus& mod, const SuiteOptions& opt) {
  const u64 p = mod.p();
  if (p > opt.point_bound) {
    return skip(p, "c9", "point count limited to p <= " + std::to_string(opt.point_bound), opt);
  }
  const FactorialTable facts(mod);
  std::vector<ReportRow> out;

  ReportRow c9 = row(p, "c9", "C9");
  classify_into(c9, c9_classify(facts));
  const u64 n = count_points_ext2(c9_form(mod), opt.point_bound);
  const bool maximal = n == hasse_weil_upper(p);
  note(c9, "points=" + std::to_string(n) + " upper=" + std::to_string(hasse_weil_upper(p)) +
               (maximal ? " maximal" : " not maximal"));
  check(c9, within_hasse_weil(p, n), "outside the Hasse-Weil window");
  check(c9, maximal == (p % 18 == 17), "maximality disagrees with p mod 18");
  out.push_back(std::move(c9));

  const C6CoeffPolys polys = c6_coeff_polys(facts);
  {
    std::vector<Fp> rs;
    for (u64 rv = 0; rv < p; ++rv) rs.push_back(Fp::from_u64(rv, mod));
    std::size_t counted = 0;
    std::string bad;
    const auto found = maximal_c6(polys, rs, opt, counted, bad);
    ReportRow r = row(p, "c6", "r in F_p");
    note(r, "counted " + std::to_string(counted) + (opt.exhaustive ? " curves" : " curves with HW = 0") +
                " maximal r=" + joined(found));
    check(r, bad.empty(), "outside the Hasse-Weil window at r=" + bad);
    check(r, found.empty() || p % 6 == 5, "maximal C_r with p = 1 mod 6");
    out.push_back(std::move(r));
  }
  if (opt.ext2) {
    ReportRow r = row(p, "c6", "r in F_{p^2}");
    if (p % 6 != 5) {
      note(r, "no r with a = 3 when p = 1 mod 6");
    } else {
      // a = 3 needs c2(r) = 0; the roots of c2 are the only candidates.
      std::vector<Fp2> rs = roots_over(*polys.c2, 2, opt.root_bound);
      std::size_t counted = 0;
      std::string bad;
      const auto found = maximal_c6(polys, rs, opt, counted, bad);
      note(r, "counted " + std::to_string(counted) + " roots of c2, maximal r=" + joined(found));
      check(r, bad.empty(), "outside the Hasse-Weil window at r=" + bad);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ReportRow> suite_rows(Suite suite, const PrimeModulus& mod, const SuiteOptions& opt) {
  switch (suite) {
    case Suite::Oracle:
      return oracle_rows(mod, opt);
    case Suite::C6Structure:
      return c6_structure_rows(mod, opt);
    case Suite::Counts:
      return counts_rows(mod, opt);
    case Suite::C9Table:
      return c9_table_rows(mod, opt);
    case Suite::Euler:
      return euler_rows(mod, opt);
    case Suite::GaussLemma:
      return gauss_lemma_rows(mod, opt);
    case Suite::Expectation:
      return expectation_rows(mod, opt);
    case Suite::Maximality:
      return maximality_rows(mod, opt);
  }
  throw DomainError("unknown suite");
}

}  // namespace detail

/// Runs `suite` over `primes`. Rows come back in prime order regardless of
/// the worker count. CapacityError and explicit-prime DomainError propagate.
inline SweepReport run_suite(Suite suite, const std::vector<u64>& primes, const SuiteOptions& opt = {}) {
  std::vector<std::vector<ReportRow>> per_prime(primes.size());
  std::vector<std::exception_ptr> errors(primes.size());
  auto job = [&](std::size_t i) {
    try {
      per_prime[i] = detail::suite_rows(suite, PrimeModulus(primes[i]), opt);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(primes.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) job(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  SweepReport report;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    report.rows.insert(report.rows.end(), per_prime[i].begin(), per_prime[i].end());
  }
  return report;
}

inline SweepReport run_suite(std::string_view name, const std::vector<u64>& primes, const SuiteOptions& opt = {}) {
  return run_suite(parse_suite(name), primes, opt);
}

}  // namespace hwc
