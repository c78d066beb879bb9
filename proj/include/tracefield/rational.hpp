#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" form with q > 0 in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q". Non-canonical fractions such as "2/4" are
/// accepted and reduced; a zero denominator or junk raises InputError.
Rational parse_rational(std::string_view text);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer abs(const Integer& a);
Rational abs(const Rational& a);

/// Floor division for integers, rounding toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Exponent of p in z (z != 0).
unsigned long valuation(const Integer& z, const Integer& p);

bool is_prime(const Integer& p);
Integer next_prime(const Integer& p);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

bool is_squarefree(const Integer& n);
/// Product of the distinct primes dividing n.
Integer radical(const Integer& n);

/// Returns (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g.
struct ExtendedGcd {
  Integer g, s, t;
};
ExtendedGcd xgcd(const Integer& a, const Integer& b);

}  // namespace tf
