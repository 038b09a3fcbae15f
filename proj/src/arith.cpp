#include "ternary/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ternary {

Int checked_narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("integer overflow in 128-bit intermediate");
  }
  return static_cast<Int>(v);
}

Wide isqrt_wide(Wide n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative number");
  if (n < 2) return n;
  // Newton iteration from a power-of-two overestimate.
  int bits = 0;
  for (Wide t = n; t > 0; t >>= 1) ++bits;
  Wide x = Wide(1) << ((bits + 1) / 2);
  while (true) {
    Wide y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

Int isqrt(Int n) { return static_cast<Int>(isqrt_wide(n)); }

bool is_square(Int n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Factorization factorize(Int n) {
  if (n <= 0) throw std::invalid_argument("factorize requires n >= 1");
  Factorization out;
  out.value = n;
  auto strip = [&](Int p) {
    if (n % p != 0) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (Int p = 5, step = 2; p <= n / p; p += step, step = 6 - step) strip(p);
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (Int p = 5, step = 2; p <= n / p; p += step, step = 6 - step) {
    if (n % p == 0) return false;
  }
  return true;
}

bool is_squarefree(Int n) {
  for (const PrimePower& pp : factorize(n).factors) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

bool all_prime_factors_one_mod_four(Int m) {
  if (m <= 0) throw std::invalid_argument("requires m >= 1");
  for (const PrimePower& pp : factorize(m).factors) {
    if (pp.prime % 4 != 1) return false;
  }
  return true;
}

std::vector<Int> squarefree_divisors(Int n) {
  std::vector<Int> divs{1};
  for (const PrimePower& pp : factorize(n).factors) {
    std::size_t len = divs.size();
    for (std::size_t i = 0; i < len; ++i) divs.push_back(divs[i] * pp.prime);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

int jacobi_symbol(Int a, Int n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi_symbol requires odd n >= 1");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int m = n % 8;
      if (m == 3 || m == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::optional<std::pair<Int, Int>> sum_two_squares_primitive(Int n) {
  if (n <= 0) throw std::invalid_argument("requires n >= 1");
  for (Int u = 0; 2 * u * u <= n; ++u) {
    Int rest = n - u * u;
    Int v = isqrt(rest);
    if (v * v == rest && std::gcd(u, v) == 1) return std::make_pair(u, v);
  }
  return std::nullopt;
}

Rational::Rational(Int n, Int d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_narrow(Wide(num) * o.den + Wide(o.num) * den),
                  checked_narrow(Wide(den) * o.den));
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(checked_narrow(Wide(num) * o.den - Wide(o.num) * den),
                  checked_narrow(Wide(den) * o.den));
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_narrow(Wide(num) * o.num), checked_narrow(Wide(den) * o.den));
}

bool Rational::operator<(const Rational& o) const {
  return Wide(num) * o.den < Wide(o.num) * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

// p-adic valuation and unit part.
std::pair<int, Int> split_valuation(Int a, Int p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return {v, a};
}

int hilbert_symbol_int(Int a, Int b, Int p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol requires nonzero arguments");
  if (p == 2) {
    auto [alpha, u] = split_valuation(a, 2);
    auto [beta, w] = split_valuation(b, 2);
    auto eps = [](Int x) { return ((x - 1) / 2) & 1; };     // (x-1)/2 mod 2, x odd
    auto omega = [](Int x) { return ((x * x - 1) / 8) & 1; };  // (x^2-1)/8 mod 2, x odd
    long e = long(eps(u)) * eps(w) + long(alpha) * omega(w) + long(beta) * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol requires a prime place");
  auto [alpha, u] = split_valuation(a, p);
  auto [beta, w] = split_valuation(b, p);
  int result = 1;
  if ((long(alpha) * beta) % 2 == 1 && p % 4 == 3) result = -result;
  if (beta % 2 == 1) result *= jacobi_symbol(u, p);
  if (alpha % 2 == 1) result *= jacobi_symbol(w, p);
  return result;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Int p) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert_symbol requires nonzero arguments");
  // a ~ num*den modulo squares.
  return hilbert_symbol_int(checked_narrow(Wide(a.num) * a.den),
                            checked_narrow(Wide(b.num) * b.den), p);
}

int hilbert_symbol_real(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert_symbol requires nonzero arguments");
  return (a.num < 0 && b.num < 0) ? -1 : 1;
}

}  // namespace ternary
