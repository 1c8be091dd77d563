#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lefmod {

/// Exact rational number. GMP keeps every mpq_class canonical
/// (gcd(num, den) = 1, den > 0) after each arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

/// "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rat& r);

/// Parses "p", "-p/q", "+p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rat parse_rat(std::string_view text);

inline int sign(const Rat& r) { return sgn(r); }

/// p/q in canonical form (the two-argument mpq_class constructor skips this).
inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace lefmod
