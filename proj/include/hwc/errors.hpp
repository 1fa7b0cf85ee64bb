// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwc {

/// Modulus is not a prime >= 5, or two operands live over different primes.
class ModulusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain: division by zero, a singular
/// curve parameter, a prime in the wrong residue class, a bad index.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested exhaustive computation exceeds its configured bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Pochhammer symbol in a denominator vanished mod p.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A mathematical invariant that must hold did not; indicates a bug.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed quartic or field-value text; `position()` is a 0-based offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A syntactically valid term whose total degree is not 4.
class DegreeError : public std::invalid_argument {
 public:
  DegreeError(const std::string& term, unsigned degree)
      : std::invalid_argument("term '" + term + "' has degree " + std::to_string(degree) +
                              ", expected 4"),
        term_(term) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

}  // namespace hwc
