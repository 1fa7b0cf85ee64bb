// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Text formats accepted on the command line.
//
// Quartic forms:
//   expr     ::= ['+'|'-'] term { ('+'|'-') term }
//   term     ::= integer ['*' monomial] | monomial
//   monomial ::= factor { '*' factor }
//   factor   ::= ('x'|'y'|'z') ['^' integer]
// Whitespace is ignored. Coefficients are reduced mod p; every term must
// have total degree 4.
//
// Field values: integers, or linear expressions in w such as "3+2*w",
// "5-w", "w", with w^2 equal to the fixed non-residue of F_{p^2}.

#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "hwc/errors.hpp"
#include "hwc/ffield.hpp"
#include "hwc/hwcore.hpp"

namespace hwc {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::size_t pos() const noexcept { return pos_; }
  std::string_view slice(std::size_t from, std::size_t to) const { return text_.substr(from, to - from); }

  /// Unsigned decimal; reduced mod `mod` when non-zero (to avoid overflow).
  u64 integer(u64 mod) {
    skip_space();
    const std::size_t start = pos_;
    u64 value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const u64 digit = static_cast<u64>(text_[pos_] - '0');
      value = mod == 0 ? value * 10 + digit
                       : static_cast<u64>((static_cast<u128>(value) * 10 + digit) % mod);
      if (mod == 0 && value > 1'000'000) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an integer", start);
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string trimmed(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

/// Parses a quartic form over F_p; see the grammar above.
inline QuarticForm<Fp> parse_quartic(std::string_view text, const PrimeModulus& mod) {
  detail::Cursor cur(text);
  QuarticForm<Fp> form(mod);
  if (cur.done()) throw ParseError("empty quartic", 0);

  bool negative = false;
  if (cur.accept('-')) negative = true;
  else cur.accept('+');

  while (true) {
    cur.skip_space();
    const std::size_t term_start = cur.pos();
    Fp coeff = Fp::one(mod);
    Exponent e{0, 0, 0};
    bool need_factor = true;

    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coeff = Fp::from_u64(cur.integer(mod.p()), mod);
      need_factor = cur.accept('*');
    }
    if (need_factor) {
      while (true) {
        const std::size_t at = cur.pos();
        const char v = cur.peek();
        std::size_t var = 0;
        if (v == 'x') var = 0;
        else if (v == 'y') var = 1;
        else if (v == 'z') var = 2;
        else throw ParseError(std::string("expected x, y or z, found ") + (v == '\0' ? "end of input" : std::string("'") + v + "'"), at);
        cur.accept(v);
        u64 power = 1;
        if (cur.accept('^')) power = cur.integer(0);
        e[var] += static_cast<unsigned>(power);
        if (!cur.accept('*')) break;
      }
    }
    const std::size_t term_end = cur.pos();
    const unsigned degree = e[0] + e[1] + e[2];
    if (degree != 4) throw DegreeError(detail::trimmed(cur.slice(term_start, term_end)), degree);
    form.add_term(e, negative ? -coeff : coeff);

    if (cur.done()) break;
    const std::size_t at = cur.pos();
    if (cur.accept('+')) negative = false;
    else if (cur.accept('-')) negative = true;
    else throw ParseError(std::string("expected '+' or '-', found '") + cur.peek() + "'", at);
  }
  return form;
}

/// Parses an element of F_{p^2} written as a linear expression in w.
inline Fp2 parse_field_value(std::string_view text, const PrimeModulus& mod) {
  detail::Cursor cur(text);
  if (cur.done()) throw ParseError("empty field value", 0);
  Fp re = Fp::zero(mod);
  Fp im = Fp::zero(mod);
  bool negative = false;
  if (cur.accept('-')) negative = true;
  else cur.accept('+');
  while (true) {
    Fp c = Fp::one(mod);
    bool has_w = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      c = Fp::from_u64(cur.integer(mod.p()), mod);
      if (cur.accept('*')) {
        const std::size_t at = cur.pos();
        if (!cur.accept('w')) throw ParseError("expected 'w' after '*'", at);
        has_w = true;
      }
    } else {
      const std::size_t at = cur.pos();
      if (!cur.accept('w')) throw ParseError("expected an integer or 'w'", at);
      has_w = true;
    }
    if (negative) c = -c;
    (has_w ? im : re) += c;
    if (cur.done()) break;
    const std::size_t at = cur.pos();
    if (cur.accept('+')) negative = false;
    else if (cur.accept('-')) negative = true;
    else throw ParseError("expected '+' or '-'", at);
  }
  return Fp2(re, im);
}

}  // namespace hwc
