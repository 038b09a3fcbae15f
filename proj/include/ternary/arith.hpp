#pragma once

/* Elementary integer arithmetic: factorization, quadratic symbols,
 * two-square decompositions, Hilbert symbols, exact rationals.
 * Everything is exact; there is no floating point in this library. */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ternary {

using Int = std::int64_t;
using Wide = __int128;

// Narrows a 128-bit intermediate back to Int, throwing std::overflow_error
// if the value does not fit.
Int checked_narrow(Wide v);

// Floor of the square root. n must be nonnegative.
Int isqrt(Int n);
Wide isqrt_wide(Wide n);
bool is_square(Int n);

Int gcd(Int a, Int b);

struct PrimePower {
  Int prime;
  int exponent;
};

struct Factorization {
  Int value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
};

// Deterministic trial division; intended for desk-scale inputs (<= ~1e9).
Factorization factorize(Int n);
bool is_prime(Int n);
bool is_squarefree(Int n);
bool all_prime_factors_one_mod_four(Int m);

// All squarefree divisors of n, ascending.
std::vector<Int> squarefree_divisors(Int n);

// Jacobi symbol (a|n) for odd positive n.
int jacobi_symbol(Int a, Int n);

// A primitive decomposition n = u^2 + v^2, gcd(u,v) = 1, 0 <= u <= v,
// or absent when none exists. Brute force over u <= sqrt(n/2).
std::optional<std::pair<Int, Int>> sum_two_squares_primitive(Int n);

/* Exact rational number, always stored normalized with den > 0. */
struct Rational {
  Int num = 0;
  Int den = 1;

  Rational() = default;
  Rational(Int n) : num(n), den(1) {}
  Rational(Int n, Int d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const = default;
  bool operator<(const Rational& o) const;
  bool is_zero() const { return num == 0; }
  std::string str() const;
};

// Hilbert symbol (a,b)_p at the finite prime p, and at the real place.
// Rational arguments are reduced to their square class num*den.
int hilbert_symbol(const Rational& a, const Rational& b, Int p);
int hilbert_symbol_real(const Rational& a, const Rational& b);

}  // namespace ternary
