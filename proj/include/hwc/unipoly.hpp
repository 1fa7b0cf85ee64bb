// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "hwc/ffield.hpp"

namespace hwc {

/// Default cap on p^ext for exhaustive root search.
inline constexpr u64 kDefaultRootSearchBound = 250'000;

/// Dense polynomial over F_p in canonical trimmed form.
///
/// The zero polynomial has no coefficients at all and reports no degree;
/// every other polynomial has a nonzero leading coefficient.
class UniPoly {
 public:
  explicit UniPoly(const PrimeModulus& mod) : mod_(mod) {}

  /// Coefficients in ascending degree; integers are reduced mod p.
  UniPoly(std::initializer_list<i64> coeffs, const PrimeModulus& mod) : mod_(mod) {
    coeffs_.reserve(coeffs.size());
    for (i64 c : coeffs) coeffs_.push_back(Fp(c, mod).value());
    trim();
  }

  UniPoly(std::vector<u64> coeffs, const PrimeModulus& mod) : mod_(mod), coeffs_(std::move(coeffs)) {
    for (u64& c : coeffs_) c %= mod.p();
    trim();
  }

  static UniPoly constant(const Fp& c) { return UniPoly(std::vector<u64>{c.value()}, c.modulus()); }

  /// c * r^k
  static UniPoly monomial(const Fp& c, std::size_t k) {
    std::vector<u64> v(k + 1, 0);
    v[k] = c.value();
    return UniPoly(std::move(v), c.modulus());
  }

  const PrimeModulus& modulus() const noexcept { return mod_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  /// Coefficient of r^k; zero past the degree.
  Fp coeff(std::size_t k) const { return Fp::from_u64(k < coeffs_.size() ? coeffs_[k] : 0, mod_); }
  Fp leading() const { return coeffs_.empty() ? Fp::zero(mod_) : coeff(coeffs_.size() - 1); }
  std::span<const u64> raw() const noexcept { return coeffs_; }

  friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
    require_same(f.mod_, g.mod_);
    const u64 p = f.mod_.p();
    std::vector<u64> out(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const u64 a = i < f.coeffs_.size() ? f.coeffs_[i] : 0;
      const u64 b = i < g.coeffs_.size() ? g.coeffs_[i] : 0;
      out[i] = a >= p - b ? a - (p - b) : a + b;
    }
    return UniPoly(std::move(out), f.mod_);
  }

  UniPoly operator-() const {
    std::vector<u64> out(coeffs_);
    for (u64& c : out) c = c == 0 ? 0 : mod_.p() - c;
    return UniPoly(std::move(out), mod_);
  }

  friend UniPoly operator-(const UniPoly& f, const UniPoly& g) { return f + (-g); }

  friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
    require_same(f.mod_, g.mod_);
    if (f.is_zero() || g.is_zero()) return UniPoly(f.mod_);
    const u64 p = f.mod_.p();
    std::vector<u64> out(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
      if (f.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
        const u64 t = detail::mul_mod(f.coeffs_[i], g.coeffs_[j], p);
        u64& slot = out[i + j];
        slot = slot >= p - t ? slot - (p - t) : slot + t;
      }
    }
    return UniPoly(std::move(out), f.mod_);
  }

  friend UniPoly operator*(const Fp& c, const UniPoly& f) {
    require_same(c.modulus(), f.mod_);
    std::vector<u64> out(f.coeffs_);
    for (u64& x : out) x = detail::mul_mod(x, c.value(), f.mod_.p());
    return UniPoly(std::move(out), f.mod_);
  }

  UniPoly pow(u64 e) const {
    UniPoly result = constant(Fp::one(mod_));
    UniPoly base = *this;
    while (e != 0) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e != 0) base = base * base;
    }
    return result;
  }

  /// Monic scaling; zero stays zero.
  UniPoly monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * *this;
  }

  /// Polynomial long division: f = q*g + r with deg r < deg g.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& f, const UniPoly& g) {
    require_same(f.mod_, g.mod_);
    if (g.is_zero()) throw DomainError("polynomial division by zero");
    const u64 p = f.mod_.p();
    std::vector<u64> rem(f.coeffs_);
    if (rem.size() < g.coeffs_.size()) return {UniPoly(f.mod_), f};
    const std::size_t dg = g.coeffs_.size() - 1;
    std::vector<u64> quot(rem.size() - dg, 0);
    const u64 lead_inv = g.leading().inverse().value();
    for (std::size_t k = quot.size(); k-- > 0;) {
      const u64 q = detail::mul_mod(rem[k + dg], lead_inv, p);
      quot[k] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= dg; ++j) {
        const u64 t = detail::mul_mod(q, g.coeffs_[j], p);
        u64& slot = rem[k + j];
        slot = slot >= t ? slot - t : slot + (p - t);
      }
    }
    return {UniPoly(std::move(quot), f.mod_), UniPoly(std::move(rem), f.mod_)};
  }

  /// Horner evaluation at a point of F_p or F_{p^2}.
  template <class Field>
  Field operator()(const Field& x) const {
    require_same(x.modulus(), mod_);
    Field acc = lift<Field>(Fp::zero(mod_));
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc = acc * x + lift<Field>(Fp::from_u64(coeffs_[i], mod_));
    }
    return acc;
  }

  friend bool operator==(const UniPoly& f, const UniPoly& g) {
    return f.mod_ == g.mod_ && f.coeffs_ == g.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& f) {
    if (f.is_zero()) return os << '0';
    bool first = true;
    for (std::size_t i = f.coeffs_.size(); i-- > 0;) {
      if (f.coeffs_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || f.coeffs_[i] != 1) os << f.coeffs_[i];
      if (i > 0) os << (f.coeffs_[i] != 1 ? "*r" : "r");
      if (i > 1) os << '^' << i;
    }
    return os;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  PrimeModulus mod_;
  std::vector<u64> coeffs_;
};

inline UniPoly poly_mul(const UniPoly& f, const UniPoly& g) { return f * g; }

/// Monic gcd by the Euclidean algorithm.
inline UniPoly poly_gcd(UniPoly f, UniPoly g) {
  require_same(f.modulus(), g.modulus());
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
  while (!g.is_zero()) {
    UniPoly r = divmod(f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

inline UniPoly derivative(const UniPoly& f) {
  const PrimeModulus& mod = f.modulus();
  if (f.is_constant()) return UniPoly(mod);
  std::vector<u64> out(f.raw().size() - 1);
  for (std::size_t i = 1; i < f.raw().size(); ++i) {
    out[i - 1] = detail::mul_mod(f.raw()[i], i % mod.p(), mod.p());
  }
  return UniPoly(std::move(out), mod);
}

/// gcd(f, f') is constant. Nonzero constants are separable.
inline bool is_separable(const UniPoly& f) {
  if (f.is_zero()) throw DomainError("separability of the zero polynomial");
  return poly_gcd(f, derivative(f)).is_constant();
}

/// f | g. The zero polynomial is divisible by everything.
inline bool divides(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero()) throw DomainError("divisibility by the zero polynomial");
  return divmod(g, f).second.is_zero();
}

template <class Field>
Field eval(const UniPoly& f, const Field& x) {
  return f(x);
}

/// All distinct roots of f in F_p (ext = 1) or F_{p^2} (ext = 2), by
/// exhaustive evaluation. Roots are returned as F_{p^2} elements in
/// enumeration order; for ext = 1 they all lie in the base field.
inline std::vector<Fp2> roots_over(const UniPoly& f, int ext, u64 bound = kDefaultRootSearchBound) {
  if (f.is_zero()) throw DomainError("roots of the zero polynomial");
  if (ext != 1 && ext != 2) throw DomainError("extension degree must be 1 or 2");
  const PrimeModulus& mod = f.modulus();
  const u128 size = ext == 1 ? static_cast<u128>(mod.p()) : static_cast<u128>(mod.p()) * mod.p();
  if (size > bound) {
    throw CapacityError("root search over a field of size " +
                        std::to_string(static_cast<u64>(size)) + " exceeds bound " +
                        std::to_string(bound));
  }
  std::vector<Fp2> roots;
  if (f.is_constant()) return roots;
  if (ext == 1) {
    for (u64 a = 0; a < mod.p(); ++a) {
      const Fp x = Fp::from_u64(a, mod);
      if (f(x).is_zero()) roots.emplace_back(x);
    }
    return roots;
  }
  for_each_fp2(mod, [&](const Fp2& x) {
    if (f(x).is_zero()) roots.push_back(x);
  });
  return roots;
}

}  // namespace hwc
