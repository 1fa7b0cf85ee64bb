// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Hasse-Witt matrices of plane quartics F(x, y, z) = 0 over F_p or F_{p^2}.
//
// The cohomology basis is ordered as 1/(x^2yz), 1/(xy^2z), 1/(xyz^2), i.e.
// beta_1 = (2,1,1), beta_2 = (1,2,1), beta_3 = (1,1,2). Entry (row a, col b)
// is the coefficient of x^(p*beta_b - beta_a) in F^(p-1).

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hwc/ffield.hpp"

namespace hwc {

using Exponent = std::array<unsigned, 3>;

/// Row-major 3x3 matrix over F_p or F_{p^2}.
template <class Field>
class Matrix3 {
 public:
  explicit Matrix3(const PrimeModulus& mod) : entries_(filled(lift<Field>(Fp::zero(mod)))) {}

  static Matrix3 identity(const PrimeModulus& mod) {
    Matrix3 m(mod);
    for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = lift<Field>(Fp::one(mod));
    return m;
  }

  const PrimeModulus& modulus() const noexcept { return entries_[0].modulus(); }

  Field& at(std::size_t row, std::size_t col) { return entries_.at(row * 3 + col); }
  const Field& at(std::size_t row, std::size_t col) const { return entries_.at(row * 3 + col); }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 out(a.modulus());
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        Field acc = out.at(i, j);
        for (std::size_t k = 0; k < 3; ++k) acc += a.at(i, k) * b.at(k, j);
        out.at(i, j) = acc;
      }
    }
    return out;
  }

  /// Entrywise x -> x^(p^times).
  Matrix3 frobenius_twist(unsigned times) const {
    Matrix3 out = *this;
    const u64 p = modulus().p();
    for (Field& x : out.entries_) {
      for (unsigned t = 0; t < times; ++t) x = x.pow(p);
    }
    return out;
  }

  bool is_zero() const {
    for (const Field& x : entries_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  /// All entries off the main diagonal vanish.
  bool is_diagonal() const {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i != j && !at(i, j).is_zero()) return false;
      }
    }
    return true;
  }

  /// All entries off the anti-diagonal vanish.
  bool is_antidiagonal() const {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i + j != 2 && !at(i, j).is_zero()) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Matrix3& a, const Matrix3& b) { return a.entries_ == b.entries_; }

  friend std::ostream& operator<<(std::ostream& os, const Matrix3& m) {
    for (std::size_t i = 0; i < 3; ++i) {
      os << m.at(i, 0) << ' ' << m.at(i, 1) << ' ' << m.at(i, 2) << '\n';
    }
    return os;
  }

 private:
  static std::array<Field, 9> filled(const Field& z) { return {z, z, z, z, z, z, z, z, z}; }

  std::array<Field, 9> entries_;
};

template <class Field>
using HWMatrix = Matrix3<Field>;

/// Sparse ternary quartic form; zero coefficients are never stored.
template <class Field>
class QuarticForm {
 public:
  explicit QuarticForm(const PrimeModulus& mod) : mod_(mod) {}

  const PrimeModulus& modulus() const noexcept { return mod_; }
  const std::map<Exponent, Field>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * x^i y^j z^k, merging with any existing term.
  QuarticForm& add_term(const Exponent& e, const Field& c) {
    require_same(c.modulus(), mod_);
    if (e[0] + e[1] + e[2] != 4) {
      throw DomainError("monomial exponents sum to " + std::to_string(e[0] + e[1] + e[2]) +
                        ", expected 4");
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(e, c);
      return *this;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
    return *this;
  }

  QuarticForm& add_term(unsigned i, unsigned j, unsigned k, i64 c) {
    return add_term({i, j, k}, lift<Field>(Fp(c, mod_)));
  }

  /// Value at a point of F_{p^2} (or F_p when Field is Fp and Point is Fp).
  template <class Point>
  Point operator()(const Point& x, const Point& y, const Point& z) const {
    const std::array<Point, 3> vars{x, y, z};
    Point acc = lift<Point>(Fp::zero(mod_));
    for (const auto& [e, c] : terms_) {
      Point term = lift_coeff<Point>(c);
      for (std::size_t v = 0; v < 3; ++v) {
        for (unsigned n = 0; n < e[v]; ++n) term *= vars[v];
      }
      acc += term;
    }
    return acc;
  }

  friend bool operator==(const QuarticForm& a, const QuarticForm& b) {
    return a.mod_ == b.mod_ && a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuarticForm& f) {
    if (f.terms_.empty()) return os << '0';
    bool first = true;
    static constexpr char kVars[3] = {'x', 'y', 'z'};
    for (auto it = f.terms_.rbegin(); it != f.terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second;
      for (std::size_t v = 0; v < 3; ++v) {
        if (it->first[v] == 0) continue;
        os << '*' << kVars[v];
        if (it->first[v] > 1) os << '^' << it->first[v];
      }
    }
    return os;
  }

 private:
  template <class Point>
  static Point lift_coeff(const Field& c) {
    if constexpr (std::is_same_v<Point, Field>) {
      return c;
    } else {
      static_assert(std::is_same_v<Field, Fp>, "cannot evaluate an F_{p^2} form at F_p points");
      return lift<Point>(c);
    }
  }

  PrimeModulus mod_;
  std::map<Exponent, Field> terms_;
};

/// Basis exponent vectors beta_1..beta_3 in the fixed order.
inline constexpr std::array<Exponent, 3> kBasis{{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}};

/// Exponent of F^(p-1) feeding entry (row, col): p*beta_col - beta_row.
inline Exponent hw_slot(u64 p, std::size_t row, std::size_t col) {
  Exponent e{};
  for (std::size_t v = 0; v < 3; ++v) {
    e[v] = static_cast<unsigned>(p * kBasis[col][v] - kBasis[row][v]);
  }
  return e;
}

namespace detail {

/// Cap on the number of free-variable assignments the fast path may visit.
inline constexpr double kMaxEnumeration = 5e7;

/// Integer linear system sum_t n_t * column_t = rhs, solved for the pivot
/// variables in terms of the free ones: den[i] * n_{pivot[i]} =
/// num[i] - sum_j coef[i][j] * n_{free[j]}.
struct ReducedSystem {
  bool consistent = true;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> frees;
  std::vector<i64> num;
  std::vector<i64> den;
  std::vector<std::vector<i64>> coef;
};

struct Rational {
  i64 n = 0;
  i64 d = 1;

  static Rational make(i64 n, i64 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i64 g = std::gcd(n < 0 ? -n : n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(a.n * b.d - b.n * a.d, a.d * b.d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(a.n * b.n, a.d * b.d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return make(a.n * b.d, a.d * b.n);
  }
  bool is_zero() const { return n == 0; }
};

/// Gauss-Jordan over Q on the rows (sum, x, y, z) of the exponent system.
inline ReducedSystem reduce_system(const std::vector<Exponent>& exps, i64 total,
                                   const Exponent& target) {
  const std::size_t cols = exps.size();
  std::vector<std::vector<Rational>> m(4, std::vector<Rational>(cols + 1));
  for (std::size_t t = 0; t < cols; ++t) {
    m[0][t] = {1, 1};
    for (std::size_t v = 0; v < 3; ++v) m[v + 1][t] = {static_cast<i64>(exps[t][v]), 1};
  }
  m[0][cols] = {total, 1};
  for (std::size_t v = 0; v < 3; ++v) m[v + 1][cols] = {static_cast<i64>(target[v]), 1};

  ReducedSystem sys;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < 4; ++col) {
    std::size_t pivot = row;
    while (pivot < 4 && m[pivot][col].is_zero()) ++pivot;
    if (pivot == 4) {
      sys.frees.push_back(col);
      continue;
    }
    std::swap(m[pivot], m[row]);
    const Rational lead = m[row][col];
    for (Rational& x : m[row]) x = x / lead;
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = 0; c <= cols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
    }
    sys.pivots.push_back(col);
    ++row;
  }
  for (std::size_t col = sys.pivots.empty() ? 0 : sys.pivots.back() + 1; col < cols; ++col) {
    if (std::find(sys.frees.begin(), sys.frees.end(), col) == sys.frees.end()) {
      sys.frees.push_back(col);
    }
  }
  for (std::size_t r = row; r < 4; ++r) {
    if (!m[r][cols].is_zero()) sys.consistent = false;
  }
  for (std::size_t i = 0; i < sys.pivots.size(); ++i) {
    i64 lcm = m[i][cols].d;
    for (std::size_t f : sys.frees) lcm = std::lcm(lcm, m[i][f].d);
    sys.den.push_back(lcm);
    sys.num.push_back(m[i][cols].n * (lcm / m[i][cols].d));
    std::vector<i64> row_coef;
    for (std::size_t f : sys.frees) row_coef.push_back(m[i][f].n * (lcm / m[i][f].d));
    sys.coef.push_back(std::move(row_coef));
  }
  return sys;
}

/// Number of nonnegative f-tuples with sum <= n, as a double.
inline double tuple_count(double n, std::size_t f) {
  double c = 1.0;
  for (std::size_t i = 1; i <= f; ++i) c = c * (n + static_cast<double>(i)) / static_cast<double>(i);
  return c;
}

/// Coefficient of x^target in F^total, by enumerating multinomial exponent
/// vectors (n_t) that satisfy the linear constraints. total < p.
template <class Field>
Field power_coefficient(const QuarticForm<Field>& form, const FactorialTable& facts, i64 total,
                        const Exponent& target) {
  const PrimeModulus& mod = form.modulus();
  Field sum = lift<Field>(Fp::zero(mod));
  if (form.size() == 0) return sum;

  std::vector<Exponent> exps;
  std::vector<Field> coeffs;
  for (const auto& [e, c] : form.terms()) {
    exps.push_back(e);
    coeffs.push_back(c);
  }
  const ReducedSystem sys = reduce_system(exps, total, target);
  if (!sys.consistent) return sum;
  if (tuple_count(static_cast<double>(total), sys.frees.size()) > kMaxEnumeration) {
    throw CapacityError("fast Hasse-Witt path would enumerate more than 5e7 exponent vectors (" +
                        std::to_string(sys.frees.size()) + " free parameters)");
  }

  const Field one = lift<Field>(Fp::one(mod));
  std::vector<bool> unit(coeffs.size());
  for (std::size_t t = 0; t < coeffs.size(); ++t) unit[t] = coeffs[t] == one;

  const u64 p = mod.p();
  std::vector<i64> n(exps.size(), 0);
  auto visit = [&]() {
    for (std::size_t i = 0; i < sys.pivots.size(); ++i) {
      i64 value = sys.num[i];
      for (std::size_t j = 0; j < sys.frees.size(); ++j) value -= sys.coef[i][j] * n[sys.frees[j]];
      if (value % sys.den[i] != 0) return;
      value /= sys.den[i];
      if (value < 0 || value > total) return;
      n[sys.pivots[i]] = value;
    }
    u64 multinomial = facts.raw(static_cast<u64>(total));
    for (i64 k : n) multinomial = mul_mod(multinomial, facts.raw_inverse(static_cast<u64>(k)), p);
    Field term = lift<Field>(Fp::from_u64(multinomial, mod));
    for (std::size_t t = 0; t < n.size(); ++t) {
      if (!unit[t] && n[t] != 0) term *= coeffs[t].pow(static_cast<u64>(n[t]));
    }
    sum += term;
  };
  auto recurse = [&](auto&& self, std::size_t depth, i64 used) -> void {
    if (depth == sys.frees.size()) {
      visit();
      return;
    }
    for (i64 v = 0; v + used <= total; ++v) {
      n[sys.frees[depth]] = v;
      self(self, depth + 1, used + v);
    }
  };
  recurse(recurse, 0, 0);
  return sum;
}

}  // namespace detail

/// Hasse-Witt matrix via constrained multinomial enumeration.
///
/// Each entry is a sum over exponent vectors (n_t) of the terms of F with
/// sum n_t = p-1 and sum n_t * e_t equal to the entry's target exponent;
/// only the free parameters of that linear system are iterated. Forms with
/// at most four terms cost O(p) per entry.
template <class Field>
HWMatrix<Field> hw_matrix(const QuarticForm<Field>& form, const FactorialTable& facts) {
  require_same(form.modulus(), facts.modulus());
  const u64 p = form.modulus().p();
  HWMatrix<Field> h(form.modulus());
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 3; ++col) {
      h.at(row, col) =
          detail::power_coefficient(form, facts, static_cast<i64>(p - 1), hw_slot(p, row, col));
    }
  }
  return h;
}

template <class Field>
HWMatrix<Field> hw_matrix(const QuarticForm<Field>& form) {
  return hw_matrix(form, FactorialTable(form.modulus()));
}

/// Largest p for which hw_matrix_oracle will expand F^(p-1).
inline constexpr u64 kOracleMaxPrime = 31;

/// Hasse-Witt matrix by literally expanding F^(p-1) and reading off the nine
/// coefficients. Independent of the enumeration path; small p only.
template <class Field>
HWMatrix<Field> hw_matrix_oracle(const QuarticForm<Field>& form) {
  const PrimeModulus& mod = form.modulus();
  const u64 p = mod.p();
  if (p > kOracleMaxPrime) {
    throw CapacityError("oracle expansion of F^(p-1) limited to p <= " +
                        std::to_string(kOracleMaxPrime) + ", got p = " + std::to_string(p));
  }
  const Field zero = lift<Field>(Fp::zero(mod));
  // Dense table over (i, j) with k = degree - i - j implied.
  std::size_t degree = 0;
  std::size_t side = 1;
  std::vector<Field> power(side * side, lift<Field>(Fp::one(mod)));
  for (u64 step = 0; step + 1 < p; ++step) {
    const std::size_t next_degree = degree + 4;
    const std::size_t next_side = next_degree + 1;
    std::vector<Field> next(next_side * next_side, zero);
    for (std::size_t i = 0; i <= degree; ++i) {
      for (std::size_t j = 0; i + j <= degree; ++j) {
        const Field& c = power[i * side + j];
        if (c.is_zero()) continue;
        for (const auto& [e, f] : form.terms()) {
          next[(i + e[0]) * next_side + (j + e[1])] += c * f;
        }
      }
    }
    power = std::move(next);
    degree = next_degree;
    side = next_side;
  }
  HWMatrix<Field> h(mod);
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 3; ++col) {
      const Exponent e = hw_slot(p, row, col);
      h.at(row, col) = power[e[0] * side + e[1]];
    }
  }
  return h;
}

/// Rank by Gaussian elimination.
template <class Field>
int rank3(HWMatrix<Field> m) {
  int rank = 0;
  for (std::size_t col = 0; col < 3 && rank < 3; ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < 3 && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == 3) continue;
    const std::size_t r = static_cast<std::size_t>(rank);
    for (std::size_t c = 0; c < 3; ++c) std::swap(m.at(pivot, c), m.at(r, c));
    const Field inv = m.at(r, col).inverse();
    for (std::size_t below = r + 1; below < 3; ++below) {
      const Field factor = m.at(below, col) * inv;
      if (factor.is_zero()) continue;
      for (std::size_t c = 0; c < 3; ++c) m.at(below, c) -= factor * m.at(r, c);
    }
    ++rank;
  }
  return rank;
}

/// Rank of M * M^(p) * M^(p^2): the stable rank of Frobenius, i.e. the p-rank.
template <class Field>
int stable_rank(const HWMatrix<Field>& m) {
  return rank3(m * m.frobenius_twist(1) * m.frobenius_twist(2));
}

template <class Field>
int a_number(const HWMatrix<Field>& m) {
  return 3 - rank3(m);
}

template <class Field>
int p_rank(const HWMatrix<Field>& m) {
  return stable_rank(m);
}

/// Whether Y^2 = X^3 + 1 is supersingular: the coefficient of x^(p-1) in
/// (x^3 + 1)^((p-1)/2) vanishes mod p.
inline bool elliptic_e0_supersingular(const PrimeModulus& mod) {
  const u64 p = mod.p();
  if ((p - 1) % 3 != 0) return true;
  return binomial(static_cast<i64>((p - 1) / 2), static_cast<i64>((p - 1) / 3), mod).is_zero();
}

}  // namespace hwc
