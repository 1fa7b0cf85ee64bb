// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// hwc: Hasse-Witt matrices, classifications, max-a enumeration, F_{p^2}
// point counts and verification sweeps for plane quartics.
//
// Exit status: 0 pass, 1 a row failed, 2 usage error, 3 capacity exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwc/errors.hpp"
#include "hwc/families.hpp"
#include "hwc/ffield.hpp"
#include "hwc/harness/parser.hpp"
#include "hwc/harness/points.hpp"
#include "hwc/harness/report.hpp"
#include "hwc/harness/suites.hpp"
#include "hwc/hwcore.hpp"

namespace {

using namespace hwc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Args {
  std::optional<u64> p;
  std::string p_range;
  std::string family;  // empty: general if --quartic is given, else c6
  std::string r;
  std::string quartic;
  std::string format = "csv";
  std::optional<u64> bound;
  std::string suite;
  bool ext2 = false;
  bool exhaustive = false;
  unsigned workers = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<u64> requested_primes(const Args& a) {
  if (a.p && !a.p_range.empty()) throw UsageError("give either --p or --p-range, not both");
  if (a.p) {
    PrimeModulus check(*a.p);  // rejects composites and p < 5
    return {*a.p};
  }
  if (a.p_range.empty()) throw UsageError("one of --p or --p-range is required");
  const auto dots = a.p_range.find("..");
  if (dots == std::string::npos) throw UsageError("--p-range must look like A..B");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo = a.p_range.substr(0, dots);
    const std::string hi = a.p_range.substr(dots + 2);
    const u64 l = std::stoull(lo, &used_lo);
    const u64 h = std::stoull(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw UsageError("--p-range must look like A..B");
    return sweep_primes(l, h);
  } catch (const std::logic_error&) {
    throw UsageError("--p-range must look like A..B");
  }
}

/// C_r parameter: an F_p value when the w-part vanishes.
struct RValue {
  Fp2 value;
  bool in_fp() const { return value.in_base_field(); }
};

RValue parse_r(const Args& a, const PrimeModulus& mod) {
  if (a.r.empty()) throw UsageError("--family c6 needs --r");
  return {parse_field_value(a.r, mod)};
}

QuarticForm<Fp> general_form(const Args& a, const PrimeModulus& mod) {
  if (a.quartic.empty()) throw UsageError("--family general needs --quartic");
  return parse_quartic(a.quartic, mod);
}

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void emit(const SweepReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << to_json_text(report) << '\n';
  } else {
    write_csv(std::cout, report);
  }
}

/// Rows of arbitrary string-valued columns, in CSV or as a JSON array.
enum class Cell { Text, Number, Boolean };

void emit_table(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows,
                const std::vector<Cell>& kinds, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        switch (kinds[i]) {
          case Cell::Number:
            o[columns[i]] = std::stoull(r[i]);
            break;
          case Cell::Boolean:
            o[columns[i]] = r[i] == "true";
            break;
          case Cell::Text:
            o[columns[i]] = r[i];
            break;
        }
      }
      out.push_back(std::move(o));
    }
    std::cout << out.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) std::cout << (i ? "," : "") << columns[i];
  std::cout << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << detail::csv_field(r[i]);
    std::cout << '\n';
  }
}

// --- hw ----------------------------------------------------------------------

template <class Field>
std::vector<std::string> matrix_row(u64 p, const std::string& family, const std::string& param,
                                    const HWMatrix<Field>& m) {
  std::vector<std::string> out{std::to_string(p), family, param};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out.push_back(str(m.at(r, c)));
  }
  return out;
}

int cmd_hw(const Args& a) {
  std::vector<std::vector<std::string>> rows;
  for (u64 p : requested_primes(a)) {
    const PrimeModulus mod(p);
    if (a.family == "c9") {
      rows.push_back(matrix_row(p, "c9", "C9", c9_hw(mod)));
    } else if (a.family == "general") {
      rows.push_back(matrix_row(p, "general", a.quartic, hw_matrix(general_form(a, mod))));
    } else {
      const RValue r = parse_r(a, mod);
      if (r.in_fp()) rows.push_back(matrix_row(p, "c6", str(r.value), c6_hw(mod, r.value.re())));
      else rows.push_back(matrix_row(p, "c6", str(r.value), c6_hw(mod, r.value)));
    }
  }
  std::vector<std::string> cols{"p", "family", "param"};
  std::vector<Cell> kinds{Cell::Number, Cell::Text, Cell::Text};
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      cols.push_back("m" + std::to_string(r) + std::to_string(c));
      kinds.push_back(Cell::Text);
    }
  }
  emit_table(cols, rows, kinds, a.format);
  return kExitPass;
}

// --- classify ----------------------------------------------------------------

template <class Field>
ReportRow classify_c6(const C6CoeffPolys& polys, const Field& r, const std::string& param) {
  const u64 p = polys.mod.p();
  ReportRow row = detail::row(p, "c6", param);
  const HWMatrix<Field> h = c6_hw(polys, r);
  if (r.is_zero()) {
    row.a_number = a_number(h);
    row.p_rank = stable_rank(h);
    row.detail = "r=0 is outside the C6 classification";
    return row;
  }
  const int a = a_number(h);
  if (const auto t = c6_table(p, a)) {
    detail::classify_into(row, c6_classify(polys, r));
  } else {
    row.a_number = a;
    row.p_rank = stable_rank(h);
    detail::check(row, false, "a-number not allowed for this residue class");
  }
  return row;
}

int cmd_classify(const Args& a) {
  SweepReport report;
  for (u64 p : requested_primes(a)) {
    const PrimeModulus mod(p);
    if (a.family == "c9") {
      report.append({detail::c9_table_rows(mod, {})});
    } else if (a.family == "general") {
      const HWMatrix<Fp> h = hw_matrix(general_form(a, mod));
      ReportRow row = detail::row(p, "general", a.quartic);
      row.a_number = a_number(h);
      row.p_rank = stable_rank(h);
      report.rows.push_back(std::move(row));
    } else {
      const C6CoeffPolys polys = c6_coeff_polys(mod);
      if (a.r.empty()) {
        for (u64 rv = 0; rv < p; ++rv) {
          const Fp r = Fp::from_u64(rv, mod);
          if (c6_nonsingular(r)) report.rows.push_back(classify_c6(polys, r, std::to_string(rv)));
        }
      } else {
        const RValue r = parse_r(a, mod);
        if (r.in_fp()) report.rows.push_back(classify_c6(polys, r.value.re(), str(r.value)));
        else report.rows.push_back(classify_c6(polys, r.value, str(r.value)));
      }
    }
  }
  emit(report, a.format);
  return report.passed() ? kExitPass : kExitFail;
}

// --- enumerate ---------------------------------------------------------------

/// Max-a C_r per prime: a summary row with the count, then one row per
/// +-r class found in F_{p^2}.
int cmd_enumerate(const Args& a) {
  if (a.family != "c6") throw UsageError("enumerate supports --family c6 only");
  SweepReport report;
  const u64 bound = a.bound.value_or(kDefaultRootSearchBound);
  for (u64 p : requested_primes(a)) {
    const PrimeModulus mod(p);
    const C6CoeffPolys polys = c6_coeff_polys(mod);
    const C6CountDetail d = c6_count_detail(polys);
    const int max_a = polys.antidiagonal() ? 3 : 2;
    ReportRow summary = detail::row(p, "c6", "max-a");
    summary.a_number = max_a;
    detail::note(summary, "count=" + std::to_string(d.count) + " floor(p/12)=" + std::to_string(p / 12));
    detail::check(summary, static_cast<u64>(d.count) == p / 12, "count != floor(p/12)");

    const UniPoly& poly = polys.antidiagonal() ? *polys.c2 : *polys.ct1;
    std::vector<ReportRow> classes;
    if (static_cast<u64>(p) * p <= bound) {
      const Fp2 two(Fp(2, mod));
      std::vector<Fp2> seen;
      for (const Fp2& r : roots_over(poly, 2, bound)) {
        if (r.is_zero() || r == two || r == -two) continue;
        if (std::find(seen.begin(), seen.end(), -r) != seen.end()) continue;
        seen.push_back(r);
        classes.push_back(r.in_base_field() ? classify_c6(polys, r.re(), str(r)) : classify_c6(polys, r, str(r)));
      }
      detail::note(summary, "classes_in_Fp2=" + std::to_string(classes.size()));
    } else {
      detail::note(summary, "root listing skipped: p^2 exceeds bound " + std::to_string(bound));
    }
    report.rows.push_back(std::move(summary));
    report.rows.insert(report.rows.end(), classes.begin(), classes.end());
  }
  emit(report, a.format);
  return report.passed() ? kExitPass : kExitFail;
}

// --- count-points ------------------------------------------------------------

int cmd_count_points(const Args& a) {
  const u64 bound = a.bound.value_or(kDefaultPointCountBound);
  std::vector<std::vector<std::string>> rows;
  for (u64 p : requested_primes(a)) {
    const PrimeModulus mod(p);
    u64 n = 0;
    std::string family = a.family;
    std::string param;
    if (a.family == "c9") {
      param = "C9";
      n = count_points_ext2(c9_form(mod), bound);
    } else if (a.family == "general") {
      param = a.quartic;
      n = count_points_ext2(general_form(a, mod), bound);
    } else {
      const RValue r = parse_r(a, mod);
      param = str(r.value);
      n = r.in_fp() ? count_points_ext2(c6_form(r.value.re()), bound) : count_points_ext2(c6_form(r.value), bound);
    }
    rows.push_back({std::to_string(p), family, param, std::to_string(n), std::to_string(hasse_weil_upper(p)),
                    n == hasse_weil_upper(p) ? "true" : "false"});
  }
  emit_table({"p", "family", "param", "points", "upper_bound", "maximal"}, rows,
             {Cell::Number, Cell::Text, Cell::Text, Cell::Number, Cell::Number, Cell::Boolean}, a.format);
  return kExitPass;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const Args& a) {
  SuiteOptions opt;
  opt.explicit_prime = a.p.has_value();
  opt.ext2 = a.ext2;
  opt.exhaustive = a.exhaustive;
  opt.workers = a.workers;
  if (a.bound) opt.point_bound = *a.bound;
  const Suite suite = parse_suite(a.suite);
  const SweepReport report = run_suite(suite, requested_primes(a), opt);
  emit(report, a.format);
  return report.passed() ? kExitPass : kExitFail;
}

void add_common(CLI::App* cmd, Args& a, bool family = true) {
  cmd->add_option("--p", a.p, "prime p >= 5");
  cmd->add_option("--p-range", a.p_range, "inclusive prime range A..B");
  if (family) {
    cmd->add_option("--family", a.family, "c6, c9 or general")->check(CLI::IsMember({"c6", "c9", "general"}));
    cmd->add_option("--r", a.r, "C_r parameter: integer or a+b*w in F_{p^2}");
    cmd->add_option("--quartic", a.quartic, "quartic form, e.g. \"x^3*y + y^3*z + z^4\"");
  }
  cmd->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hasse-Witt matrices of plane quartics over F_p"};
  app.require_subcommand(1);
  Args args;

  auto* hw = app.add_subcommand("hw", "Hasse-Witt matrix");
  add_common(hw, args);
  auto* classify = app.add_subcommand("classify", "a-number, p-rank, Newton polygon, EO type");
  add_common(classify, args);
  auto* enumerate = app.add_subcommand("enumerate", "C_r with the largest a-number");
  add_common(enumerate, args);
  enumerate->add_option("--bound", args.bound, "largest p^2 for listing roots in F_{p^2}");
  auto* count = app.add_subcommand("count-points", "number of F_{p^2}-points");
  add_common(count, args);
  count->add_option("--bound", args.bound, "largest p for exhaustive counting");
  auto* verify = app.add_subcommand("verify", "run a verification suite over primes");
  verify->add_option("suite", args.suite, "oracle, c6-structure, counts, c9-table, euler, gauss-lemma, "
                                          "expectation or maximality")
      ->required();
  add_common(verify, args, false);
  verify->add_option("--bound", args.bound, "largest p for point counts");
  verify->add_flag("--ext2", args.ext2, "maximality: also scan r over the roots of c2 in F_{p^2}");
  verify->add_flag("--exhaustive", args.exhaustive, "maximality: count points for every r");
  verify->add_option("--workers", args.workers, "threads for range sweeps")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (args.family.empty()) args.family = args.quartic.empty() ? "c6" : "general";
    if (!args.quartic.empty() && args.family != "general") {
      throw UsageError("--quartic needs --family general");
    }
    if (*hw) return cmd_hw(args);
    if (*classify) return cmd_classify(args);
    if (*enumerate) return cmd_enumerate(args);
    if (*count) return cmd_count_points(args);
    if (*verify) return cmd_verify(args);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegreeError& e) {
    std::cerr << "degree error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ModulusError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
