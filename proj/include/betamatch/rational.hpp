#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace betamatch {

using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or a plain integer string. Throws Error("BadRational") on
/// malformed input or zero denominator. The result is canonicalized (q > 0).
Rat parse_rational(std::string_view text);

/// Renders as "p/q", or just "p" when the denominator is 1.
std::string rational_string(const Rat& q);

/// Largest integer <= q.
Int rational_floor(const Rat& q);

inline int sign_of(const Rat& q) { return sgn(q); }

/// Rounds to the nearest multiple of 2^-bits (ties toward +inf). Used to keep
/// denominators bounded across Newton refinement steps.
Rat dyadic_round(const Rat& q, unsigned bits);

/// Fixed-point decimal rendering of an exact rational: `digits` fractional
/// digits, round half away from zero.
std::string rational_decimal(const Rat& q, int digits);

struct Error : std::runtime_error {
  std::string code;
  Error(std::string code_, const std::string& what_)
      : std::runtime_error(what_), code(std::move(code_)) {}
};

}  // namespace betamatch
