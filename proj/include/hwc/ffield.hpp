// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Exact arithmetic in F_p and F_{p^2} for word-sized primes p >= 5, plus
// factorial/binomial/multinomial tables mod p.
//
// F_{p^2} is represented as F_p[w]/(w^2 - s) where s is the smallest positive
// quadratic non-residue mod p. The choice is fixed per modulus, so element
// encodings are reproducible across runs.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hwc/errors.hpp"

namespace hwc {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;

namespace detail {

inline u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  if (m <= 0xFFFFFFFFull) return (a * b) % m;
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes in [lo, hi], ascending.
inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
    if (n == hi) break;
  }
  return out;
}

/// A prime p >= 5 together with the fixed non-residue used for F_{p^2}.
class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(p) {
    if (p < 5) throw ModulusError("modulus " + std::to_string(p) + " is below 5");
    if (!is_prime(p)) throw ModulusError("modulus " + std::to_string(p) + " is not prime");
    nonresidue_ = 2;
    while (detail::pow_mod(nonresidue_, (p - 1) / 2, p) != p - 1) ++nonresidue_;
  }

  u64 p() const noexcept { return p_; }
  u64 nonresidue() const noexcept { return nonresidue_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
  u64 nonresidue_ = 0;
};

inline void require_same(const PrimeModulus& a, const PrimeModulus& b) {
  if (a != b) {
    throw ModulusError("modulus mismatch: " + std::to_string(a.p()) + " vs " +
                       std::to_string(b.p()));
  }
}

/// Residue class mod p, always stored in canonical form [0, p).
class Fp {
 public:
  Fp(i64 value, const PrimeModulus& mod) : mod_(mod) {
    const u64 p = mod.p();
    v_ = value < 0 ? p - 1 - static_cast<u64>(-(value + 1)) % p : static_cast<u64>(value) % p;
  }

  static Fp from_u64(u64 value, const PrimeModulus& mod) {
    Fp x(0, mod);
    x.v_ = value % mod.p();
    return x;
  }
  static Fp zero(const PrimeModulus& mod) { return Fp(0, mod); }
  static Fp one(const PrimeModulus& mod) { return Fp(1, mod); }

  u64 value() const noexcept { return v_; }
  const PrimeModulus& modulus() const noexcept { return mod_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp& operator+=(const Fp& o) {
    require_same(mod_, o.mod_);
    v_ += o.v_;
    if (v_ >= mod_.p() || v_ < o.v_) v_ -= mod_.p();
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    require_same(mod_, o.mod_);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (mod_.p() - o.v_);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    require_same(mod_, o.mod_);
    v_ = detail::mul_mod(v_, o.v_, mod_.p());
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const { return zero(mod_) - *this; }

  Fp pow(u64 e) const {
    Fp r = *this;
    r.v_ = detail::pow_mod(v_, e, mod_.p());
    return r;
  }

  Fp inverse() const {
    if (v_ == 0) throw DomainError("division by zero in F_" + std::to_string(mod_.p()));
    return pow(mod_.p() - 2);
  }

  /// Euler's criterion; 0 counts as a square.
  bool is_square() const { return v_ == 0 || pow((mod_.p() - 1) / 2).v_ == 1; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.mod_ == b.mod_ && a.v_ == b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  u64 v_ = 0;
  PrimeModulus mod_;
};

/// Square root in F_p by Tonelli-Shanks; nullopt for non-residues.
inline std::optional<Fp> sqrt_fp(const Fp& a) {
  const PrimeModulus& mod = a.modulus();
  const u64 p = mod.p();
  if (a.is_zero()) return a;
  if (!a.is_square()) return std::nullopt;
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1u) == 0) {
    q >>= 1;
    ++s;
  }
  const Fp z = Fp::from_u64(mod.nonresidue(), mod);
  Fp c = z.pow(q);
  Fp x = a.pow((q + 1) / 2);
  Fp t = a.pow(q);
  unsigned m = s;
  const Fp one = Fp::one(mod);
  while (!(t == one)) {
    unsigned i = 0;
    Fp t2 = t;
    while (!(t2 == one)) {
      t2 *= t2;
      ++i;
    }
    Fp b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  return x;
}

/// Element a + b*w of F_{p^2}, with w^2 = modulus().nonresidue().
class Fp2 {
 public:
  Fp2(const Fp& a, const Fp& b) : a_(a), b_(b) { require_same(a.modulus(), b.modulus()); }
  explicit Fp2(const Fp& a) : a_(a), b_(Fp::zero(a.modulus())) {}

  static Fp2 zero(const PrimeModulus& mod) { return Fp2(Fp::zero(mod)); }
  static Fp2 one(const PrimeModulus& mod) { return Fp2(Fp::one(mod)); }
  /// The adjoined square root w of the fixed non-residue.
  static Fp2 omega(const PrimeModulus& mod) { return Fp2(Fp::zero(mod), Fp::one(mod)); }

  const Fp& re() const noexcept { return a_; }
  const Fp& im() const noexcept { return b_; }
  const PrimeModulus& modulus() const noexcept { return a_.modulus(); }
  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const noexcept { return b_.is_zero(); }

  Fp2& operator+=(const Fp2& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Fp2& operator-=(const Fp2& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Fp2& operator*=(const Fp2& o) {
    const Fp s = Fp::from_u64(modulus().nonresidue(), modulus());
    const Fp re = a_ * o.a_ + b_ * o.b_ * s;
    const Fp im = a_ * o.b_ + b_ * o.a_;
    a_ = re;
    b_ = im;
    return *this;
  }
  Fp2& operator/=(const Fp2& o) { return *this *= o.inverse(); }

  friend Fp2 operator+(Fp2 x, const Fp2& y) { return x += y; }
  friend Fp2 operator-(Fp2 x, const Fp2& y) { return x -= y; }
  friend Fp2 operator*(Fp2 x, const Fp2& y) { return x *= y; }
  friend Fp2 operator/(Fp2 x, const Fp2& y) { return x /= y; }
  Fp2 operator-() const { return Fp2(-a_, -b_); }

  /// x -> x^p, i.e. a + b*w -> a - b*w.
  Fp2 frobenius() const { return Fp2(a_, -b_); }

  /// x^(p+1) = a^2 - s b^2, an element of F_p.
  Fp norm() const {
    const Fp s = Fp::from_u64(modulus().nonresidue(), modulus());
    return a_ * a_ - s * b_ * b_;
  }

  Fp2 inverse() const {
    if (is_zero()) throw DomainError("division by zero in F_" + std::to_string(modulus().p()) + "^2");
    const Fp n_inv = norm().inverse();
    return Fp2(a_ * n_inv, -b_ * n_inv);
  }

  Fp2 pow(u64 e) const {
    Fp2 result = one(modulus());
    Fp2 base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// Exponent form of the quadratic character, (p^2-1)/2 computed in 128 bits.
  Fp2 pow_half_order() const {
    const u128 p = modulus().p();
    u128 e = (p * p - 1) / 2;
    Fp2 result = one(modulus());
    Fp2 base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Fp2& x, const Fp2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  friend std::ostream& operator<<(std::ostream& os, const Fp2& x) {
    if (x.b_.is_zero()) return os << x.a_;
    return os << x.a_ << '+' << x.b_ << "*w";
  }

 private:
  Fp a_;
  Fp b_;
};

/// True iff x = y^2 for some y in F_{p^2}; 0 counts as a square.
///
/// An element is a square in F_{p^2} exactly when its norm is a square in
/// F_p, which costs one exponentiation in F_p instead of one in F_{p^2}.
inline bool is_square_fp2(const Fp2& x) { return x.is_zero() || x.norm().is_square(); }

/// Some y in F_{p^2} with y^2 = d. Always exists for d in F_p.
inline Fp2 sqrt_in_fp2(const Fp& d) {
  if (auto root = sqrt_fp(d)) return Fp2(*root);
  const PrimeModulus& mod = d.modulus();
  // d = s * (d/s) with d/s a residue, so sqrt(d) = w * sqrt(d/s).
  const auto cofactor = sqrt_fp(d / Fp::from_u64(mod.nonresidue(), mod));
  if (!cofactor) throw IntegrityError("d/s is not a residue although d is not");
  return Fp2(Fp::zero(mod), *cofactor);
}

/// Every element of F_{p^2}, in the order a + b*w for b outer, a inner.
template <class Fn>
void for_each_fp2(const PrimeModulus& mod, Fn&& fn) {
  for (u64 b = 0; b < mod.p(); ++b) {
    for (u64 a = 0; a < mod.p(); ++a) {
      fn(Fp2(Fp::from_u64(a, mod), Fp::from_u64(b, mod)));
    }
  }
}

/// n! mod p for 0 <= n < p, with the matching inverse factorials.
class FactorialTable {
 public:
  explicit FactorialTable(const PrimeModulus& mod) : mod_(mod) {
    const u64 p = mod.p();
    values_.resize(p);
    inverses_.resize(p);
    values_[0] = 1;
    for (u64 n = 1; n < p; ++n) values_[n] = detail::mul_mod(values_[n - 1], n, p);
    inverses_[p - 1] = detail::pow_mod(values_[p - 1], p - 2, p);
    for (u64 n = p - 1; n > 0; --n) inverses_[n - 1] = detail::mul_mod(inverses_[n], n, p);
  }

  const PrimeModulus& modulus() const noexcept { return mod_; }
  std::span<const u64> values() const noexcept { return values_; }

  Fp factorial(u64 n) const {
    check_top(n);
    return Fp::from_u64(values_[n], mod_);
  }
  Fp inverse_factorial(u64 n) const {
    check_top(n);
    return Fp::from_u64(inverses_[n], mod_);
  }

  /// C(n, k) mod p, 0 when k > n. Requires n < p.
  Fp binomial(i64 n, i64 k) const {
    if (n < 0) throw DomainError("binomial top index is negative");
    check_top(static_cast<u64>(n));
    if (k < 0 || k > n) return Fp::zero(mod_);
    const u64 p = mod_.p();
    return Fp::from_u64(
        detail::mul_mod(values_[n], detail::mul_mod(inverses_[k], inverses_[n - k], p), p), mod_);
  }

  /// n! / prod(parts_i!) mod p. Requires sum(parts) == n and n < p.
  Fp multinomial(i64 n, std::span<const i64> parts) const {
    if (n < 0) throw DomainError("multinomial top index is negative");
    check_top(static_cast<u64>(n));
    i64 sum = 0;
    const u64 p = mod_.p();
    u64 acc = values_[n];
    for (i64 part : parts) {
      if (part < 0) throw DomainError("multinomial part is negative");
      sum += part;
      if (sum > n) break;
      acc = detail::mul_mod(acc, inverses_[part], p);
    }
    if (sum != n) {
      throw DomainError("multinomial parts sum to " + std::to_string(sum) + ", expected " +
                        std::to_string(n));
    }
    return Fp::from_u64(acc, mod_);
  }

  // Unchecked raw accessors for hot loops; callers guarantee n < p.
  u64 raw(u64 n) const noexcept { return values_[n]; }
  u64 raw_inverse(u64 n) const noexcept { return inverses_[n]; }

 private:
  void check_top(u64 n) const {
    if (n >= mod_.p()) {
      throw DomainError("top index " + std::to_string(n) + " is not below p = " +
                        std::to_string(mod_.p()));
    }
  }

  PrimeModulus mod_;
  std::vector<u64> values_;
  std::vector<u64> inverses_;
};

inline FactorialTable build_factorials(const PrimeModulus& mod) { return FactorialTable(mod); }

/// C(n, k) mod p without a table; O(min(k, n-k)). Requires 0 <= n < p.
inline Fp binomial(i64 n, i64 k, const PrimeModulus& mod) {
  if (n < 0) throw DomainError("binomial top index is negative");
  if (static_cast<u64>(n) >= mod.p()) {
    throw DomainError("binomial top index " + std::to_string(n) + " is not below p = " +
                      std::to_string(mod.p()));
  }
  if (k < 0 || k > n) return Fp::zero(mod);
  if (k > n - k) k = n - k;
  Fp num = Fp::one(mod);
  Fp den = Fp::one(mod);
  for (i64 i = 0; i < k; ++i) {
    num *= Fp(n - i, mod);
    den *= Fp(i + 1, mod);
  }
  return num / den;
}

/// n! / prod(parts_i!) mod p without a table. Requires sum(parts) == n < p.
inline Fp multinomial(i64 n, std::span<const i64> parts, const PrimeModulus& mod) {
  i64 sum = 0;
  for (i64 part : parts) {
    if (part < 0) throw DomainError("multinomial part is negative");
    sum += part;
  }
  if (sum != n) {
    throw DomainError("multinomial parts sum to " + std::to_string(sum) + ", expected " +
                      std::to_string(n));
  }
  Fp result = Fp::one(mod);
  i64 remaining = n;
  for (i64 part : parts) {
    result *= binomial(remaining, part, mod);
    remaining -= part;
  }
  return result;
}

/// Embedding used by generic code: lift an F_p value into Field.
template <class Field>
Field lift(const Fp& x);

template <>
inline Fp lift<Fp>(const Fp& x) {
  return x;
}

template <>
inline Fp2 lift<Fp2>(const Fp& x) {
  return Fp2(x);
}

}  // namespace hwc
